"""
Negativity, logarithmic negativity and the pi-tangle

Negativity here is the trace-norm form N = ||rho^T_X|| - 1 (not halved), the
logarithmic negativity is log2 ||rho^T_X||. Both accept either a dense
DensityOperator or a BlockedDensity; the blocked path works block by block,
which is exact because every traced state is Fock-diagonal.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np
from scipy.optimize import bisect

from core.densops import (
    DensityOperator,
    SubsystemLayout,
    partial_trace,
    partial_transpose,
    partial_transpose_array,
    trace_norm,
)
from core.errors import DomainError, LayoutError
from core.state_factory import BlockedDensity

logger = logging.getLogger(__name__)

State = Union[DensityOperator, BlockedDensity]

TRIPARTITE = ("A", "B", "C")


@dataclass(frozen=True)
class NegativityValue:
    """Clipped negativity max(raw, 0) together with the signed raw value"""

    value: float
    raw: float

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class TangleReport:
    pi_A: float
    pi_B: float
    pi_C: float
    n_a_bc: float
    n_b_ac: float
    n_c_ab: float
    n_ab: float
    n_ac: float
    n_bc: float
    pi: float

    @property
    def log_one_tangles(self) -> Tuple[float, float, float]:
        """Logarithmic form of the one-tangles, reported next to (never inside) pi"""
        return tuple(math.log2(1.0 + n) for n in (self.n_a_bc, self.n_b_ac, self.n_c_ab))


def party_factors(layout: SubsystemLayout, party: str) -> Tuple[str, ...]:
    """Every factor belonging to a party: its helicity qubit and Fock mode if present"""
    if party not in layout:
        raise LayoutError(f"unknown party {party!r}; layout has {layout.factor_names}")
    fock = f"n{party}"
    return (party, fock) if fock in layout else (party,)


def _blocked_trace_norm(blocked: BlockedDensity, party: str) -> float:
    if party not in blocked.layout:
        raise LayoutError(f"unknown party {party!r}; layout has {blocked.layout.factor_names}")
    weights, blocks = blocked.stacked()
    eigs = np.linalg.eigvalsh(partial_transpose_array(blocks, blocked.layout, party))
    return float(weights @ np.abs(eigs).sum(axis=-1))


def pt_trace_norm(rho: State, party: str) -> float:
    """||rho^T_party||_1"""
    if isinstance(rho, BlockedDensity):
        return _blocked_trace_norm(rho, party)
    return trace_norm(partial_transpose(rho, party_factors(rho.layout, party)))


def log_negativity(rho: State, factor: str) -> float:
    return math.log2(pt_trace_norm(rho, factor))


def trace_norm_negativity(rho: State, factor: str) -> NegativityValue:
    raw = pt_trace_norm(rho, factor) - 1.0
    return NegativityValue(max(raw, 0.0), raw)


def min_pt_eigenvalue(rho: State, party: str) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff NPT"""
    if isinstance(rho, BlockedDensity):
        _, blocks = rho.stacked()
        return float(np.linalg.eigvalsh(partial_transpose_array(blocks, rho.layout, party)).min())
    pt = partial_transpose(rho, party_factors(rho.layout, party))
    return float(np.linalg.eigvalsh(pt.data).min())


def _pair(rho: State, drop: str) -> State:
    if isinstance(rho, BlockedDensity):
        return rho.trace_out(drop)
    return partial_trace(rho, party_factors(rho.layout, drop))


def pi_tangle(rho: State) -> TangleReport:
    """pi = (pi_A + pi_B + pi_C)/3 with pi_X = N_X(YZ)^2 - N_XY^2 - N_XZ^2"""
    for party in TRIPARTITE:
        if party not in rho.layout:
            raise LayoutError(f"pi-tangle needs helicity factors A, B, C; got {rho.layout.factor_names}")

    n_a_bc = trace_norm_negativity(rho, "A").value
    n_b_ac = trace_norm_negativity(rho, "B").value
    n_c_ab = trace_norm_negativity(rho, "C").value

    n_ab = trace_norm_negativity(_pair(rho, "C"), "A").value
    n_ac = trace_norm_negativity(_pair(rho, "B"), "A").value
    n_bc = trace_norm_negativity(_pair(rho, "A"), "B").value

    pi_a = n_a_bc ** 2 - n_ab ** 2 - n_ac ** 2
    pi_b = n_b_ac ** 2 - n_ab ** 2 - n_bc ** 2
    pi_c = n_c_ab ** 2 - n_ac ** 2 - n_bc ** 2
    return TangleReport(
        pi_A=pi_a, pi_B=pi_b, pi_C=pi_c,
        n_a_bc=n_a_bc, n_b_ac=n_b_ac, n_c_ab=n_c_ab,
        n_ab=n_ab, n_ac=n_ac, n_bc=n_bc,
        pi=(pi_a + pi_b + pi_c) / 3.0,
    )


def ppt_threshold(family: Callable[[float], State], factor: str = "A",
                  lo: float = 0.0, hi: float = 1.0, xtol: float = 1e-9) -> float:
    """Mixing probability where the minimum PT eigenvalue of family(p) crosses zero.

    family maps p to a state, e.g. lambda p: bipartite_werner(omega, p).
    """
    def objective(p: float) -> float:
        return min_pt_eigenvalue(family(p), factor)

    f_lo, f_hi = objective(lo), objective(hi)
    if f_lo * f_hi > 0.0:
        raise DomainError(f"no PPT crossing in [{lo}, {hi}]: "
                          f"min PT eigenvalues {f_lo:.3e} and {f_hi:.3e}")
    threshold = bisect(objective, lo, hi, xtol=xtol)
    logger.debug("PPT threshold for factor %s at p=%.12f", factor, threshold)
    return float(threshold)
