"""
Geometric weight series produced by tracing over the second Rindler region

For a single photon seen by a uniformly accelerated observer every traced
density matrix carries the weights

    w_n = (1 - x)^2 * x^n * (n + 1),    x = exp(-2*pi*omega)

which sum to one. The series is truncated at the smallest cutoff whose exact
closed-form tail is below the policy epsilon.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from core.errors import DomainError, TruncationError

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 1e-12
DEFAULT_HARD_CAP = 512


@dataclass(frozen=True)
class AccelerationParam:
    """Dimensionless acceleration parameter omega = E/a (Omega for Unruh modes).

    omega -> infinity is the inertial limit, omega -> 0+ infinite acceleration.
    Only omega is stored; everything else is derived on demand.
    """

    omega: float

    def __post_init__(self):
        try:
            value = float(self.omega)
        except (TypeError, ValueError):
            raise DomainError(f"omega must be a real number, got {self.omega!r}",
                              field="omega", value=self.omega) from None
        if not math.isfinite(value):
            raise DomainError(f"omega must be finite, got {value}", field="omega", value=value)
        if value <= 0.0:
            raise DomainError(f"omega must be positive, got {value}", field="omega", value=value)
        object.__setattr__(self, "omega", value)

    @property
    def ratio(self) -> float:
        """x = exp(-2*pi*omega)"""
        return math.exp(-2.0 * math.pi * self.omega)

    @property
    def one_minus_ratio(self) -> float:
        # expm1 keeps 1 - x accurate when omega is tiny
        return -math.expm1(-2.0 * math.pi * self.omega)

    @classmethod
    def coerce(cls, value) -> "AccelerationParam":
        if isinstance(value, cls):
            return value
        return cls(value)


@dataclass(frozen=True)
class TruncationPolicy:
    """Maximum tail mass allowed and an absolute cap on the Fock cutoff.

    With strict=False a cutoff that would exceed hard_cap is clipped to it and
    the achievable tail is recorded instead of raising.
    """

    epsilon: float = DEFAULT_EPSILON
    hard_cap: int = DEFAULT_HARD_CAP
    strict: bool = True

    def __post_init__(self):
        if not (0.0 < self.epsilon <= 1.0) or not math.isfinite(self.epsilon):
            raise DomainError(f"epsilon must lie in (0, 1], got {self.epsilon}",
                              field="epsilon", value=self.epsilon)
        if int(self.hard_cap) != self.hard_cap or self.hard_cap < 1:
            raise DomainError(f"hard_cap must be a positive integer, got {self.hard_cap}",
                              field="hard_cap", value=self.hard_cap)
        object.__setattr__(self, "hard_cap", int(self.hard_cap))


@dataclass(frozen=True)
class FockWeightSeries:
    omega: AccelerationParam
    cutoff: int
    weights: np.ndarray = field(repr=False)
    tail_bound: float

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @property
    def captured_mass(self) -> float:
        return float(self.weights.sum())

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.weights)

    def __len__(self) -> int:
        return self.cutoff + 1


def fock_weight(n: int, omega) -> float:
    """Probability weight of Fock index n: (1 - e^{-2 pi w})^2 e^{-2 n pi w} (n + 1)"""
    if int(n) != n or n < 0:
        raise DomainError(f"Fock index must be a nonnegative integer, got {n}", field="n", value=n)
    param = AccelerationParam.coerce(omega)
    n = int(n)
    # log form avoids underflow of x**n before multiplying by (n + 1)
    log_w = (2.0 * math.log(param.one_minus_ratio)
             - 2.0 * math.pi * param.omega * n
             + math.log(n + 1))
    return math.exp(log_w)


def tail_mass(cutoff: int, omega) -> float:
    """Exact mass beyond the cutoff: x^(N+1) * ((N+1)(1-x) + 1)"""
    if int(cutoff) != cutoff or cutoff < 0:
        raise DomainError(f"cutoff must be a nonnegative integer, got {cutoff}",
                          field="cutoff", value=cutoff)
    param = AccelerationParam.coerce(omega)
    n1 = int(cutoff) + 1
    return math.exp(-2.0 * math.pi * param.omega * n1) * (n1 * param.one_minus_ratio + 1.0)


def weight_series(omega, policy: TruncationPolicy | None = None) -> FockWeightSeries:
    """Truncated weight series certified by the closed-form tail"""
    param = AccelerationParam.coerce(omega)
    policy = policy or TruncationPolicy()

    cutoff = None
    for n in range(policy.hard_cap + 1):
        if tail_mass(n, param) <= policy.epsilon:
            cutoff = n
            break

    if cutoff is None:
        achievable = tail_mass(policy.hard_cap, param)
        if policy.strict:
            raise TruncationError(policy.epsilon, policy.hard_cap, achievable)
        logger.debug("omega=%g: clipping cutoff to hard cap %d (tail %.3e)",
                     param.omega, policy.hard_cap, achievable)
        cutoff = policy.hard_cap

    weights = [fock_weight(n, param) for n in range(cutoff + 1)]
    tail = tail_mass(cutoff, param)
    logger.debug("omega=%g: cutoff %d, tail %.3e", param.omega, cutoff, tail)
    return FockWeightSeries(omega=param, cutoff=cutoff, weights=weights, tail_bound=tail)


def unruh_squeezing(omega) -> float:
    """Rapidity r of the Unruh modes, tanh(r) = exp(-pi * Omega)"""
    param = AccelerationParam.coerce(omega)
    return math.atanh(math.exp(-math.pi * param.omega))
