"""
Quantum discord and its relatives

  - discord of a bipartite state, minimized over projective measurements of
    one qubit factor on a (theta, phi) grid with local refinement
  - the closed form for X-states, evaluated on the usual candidate angles
  - global (multipartite) discord from product projective measurements
  - geometric discord as a Hilbert-Schmidt or trace distance to the
    measured state

All entropies are in bits. Grid evaluation is vectorized with numpy: every
candidate basis of a round is evaluated at once and the lexicographically
first minimum in (theta, phi) wins.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Callable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize
from scipy.special import entr, xlogy

from core.densops import (
    LN2,
    PSD_TOL,
    TRACE_TOL,
    DensityOperator,
    HermitianOperator,
    SubsystemLayout,
    entropy_of_probabilities,
    reduced,
    von_neumann_entropy,
)
from core.errors import DomainError, LayoutError, NotXStateError, PSDViolationError, TraceError
from core.fock_ledger import TruncationPolicy
from core.state_factory import MixingProbability, effective_matrix, unruh_bipartite

logger = logging.getLogger(__name__)

PROBABILITY_FLOOR = 1e-14
X_SHAPE_TOL = 1e-10
CROSSCHECK_TOL = 1e-4
EVAL_CHUNK = 512

CLOSED_FORM = "closed-form"
BRUTE_FORCE = "brute-force"

THETA = "theta"
PHI = "phi"
THETA_MAX = float(np.nextafter(math.pi, 0.0))
TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Measurement bases and grids
# ---------------------------------------------------------------------------

def _basis_kets(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Kets of the projective pair for each (theta, phi); shape (G, outcome, component).

    |+> = cos(t/2)|up> + e^{i phi} sin(t/2)|down>
    |-> = -e^{-i phi} sin(t/2)|up> + cos(t/2)|down>
    """
    thetas = np.asarray(thetas, dtype=float).ravel()
    phis = np.asarray(phis, dtype=float).ravel()
    c = np.cos(thetas / 2.0)
    s = np.sin(thetas / 2.0)
    e = np.exp(1j * phis)
    kets = np.empty((thetas.size, 2, 2), dtype=complex)
    kets[:, 0, 0] = c
    kets[:, 0, 1] = e * s
    kets[:, 1, 0] = -np.conj(e) * s
    kets[:, 1, 1] = c
    return kets


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit measurement along the Bloch axis (theta, phi)"""

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise DomainError(f"measurement angles must be finite, got ({theta}, {phi})")
        if not 0.0 <= theta <= math.pi:
            raise DomainError(f"theta must lie in [0, pi], got {theta}", field="theta", value=theta)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi % TWO_PI)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "MeasurementBasis":
        """Fold arbitrary Bloch angles onto theta in [0, pi] without changing the axis"""
        theta = float(theta) % TWO_PI
        phi = float(phi)
        if theta > math.pi:
            theta, phi = TWO_PI - theta, phi + math.pi
        return cls(theta, phi)

    def kets(self) -> np.ndarray:
        return _basis_kets(np.array([self.theta]), np.array([self.phi]))[0]

    def projectors(self) -> np.ndarray:
        """(pi_plus, pi_minus) stacked along the first axis"""
        kets = self.kets()
        return np.einsum("ia,ib->iab", kets, kets.conj())


@dataclass(frozen=True)
class GridSpec:
    """Coarse (theta, phi) grid plus rounds of local refinement.

    Each refinement round searches a window of half-width
    step * shrink_factor**(round - 1) around the incumbent with the same
    number of points per axis. phi_steps == 1 pins phi at 0.
    """

    theta_steps: int = 61
    phi_steps: int = 61
    refinement_rounds: int = 3
    shrink_factor: float = 0.25

    def __post_init__(self):
        for name, minimum in (("theta_steps", 2), ("phi_steps", 1), ("refinement_rounds", 0)):
            value = getattr(self, name)
            if int(value) != value or value < minimum:
                raise DomainError(f"{name} must be an integer >= {minimum}, got {value}",
                                  field=name, value=value)
            object.__setattr__(self, name, int(value))
        if not 0.0 < self.shrink_factor < 1.0:
            raise DomainError(f"shrink_factor must lie in (0, 1), got {self.shrink_factor}",
                              field="shrink_factor", value=self.shrink_factor)

    def steps_for(self, kind: str) -> int:
        return self.theta_steps if kind == THETA else self.phi_steps


def _axis_step(kind: str, steps: int) -> float:
    return (math.pi if kind == THETA else TWO_PI) / steps


def _coarse_axis(kind: str, steps: int) -> np.ndarray:
    if kind == PHI and steps == 1:
        return np.zeros(1)
    period = math.pi if kind == THETA else TWO_PI
    return np.linspace(0.0, period, steps, endpoint=False)


def _window_axis(kind: str, center: float, steps: int, half_width: float) -> np.ndarray:
    if kind == PHI and steps == 1:
        return np.zeros(1)
    values = center + np.linspace(-half_width, half_width, steps)
    if kind == THETA:
        return np.clip(values, 0.0, THETA_MAX)
    return np.mod(values, TWO_PI)


Surface = Callable[[List[np.ndarray]], np.ndarray]


def _grid_minimize(evaluate: Surface, axes: Sequence[str], grid: GridSpec) -> Tuple[float, Tuple[float, ...]]:
    """Minimize a vectorized objective over a product grid of angles.

    evaluate receives one value array per axis and returns the objective on
    their outer product, shaped (len(v0), len(v1), ...).
    """
    values = [_coarse_axis(kind, grid.steps_for(kind)) for kind in axes]
    surface = evaluate(values)
    index = np.unravel_index(int(np.argmin(surface)), surface.shape)
    best = float(surface[index])
    point = tuple(float(v[i]) for v, i in zip(values, index))

    for round_no in range(1, grid.refinement_rounds + 1):
        scale = grid.shrink_factor ** (round_no - 1)
        values = [
            _window_axis(kind, center, grid.steps_for(kind), _axis_step(kind, grid.steps_for(kind)) * scale)
            for kind, center in zip(axes, point)
        ]
        surface = evaluate(values)
        index = np.unravel_index(int(np.argmin(surface)), surface.shape)
        if float(surface[index]) < best:
            best = float(surface[index])
            point = tuple(float(v[i]) for v, i in zip(values, index))
    return best, point


def _chunked(fn: Callable[[np.ndarray], np.ndarray], kets: np.ndarray, chunk: int = EVAL_CHUNK) -> np.ndarray:
    return np.concatenate([fn(kets[i:i + chunk]) for i in range(0, len(kets), chunk)])


def _mesh_kets(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    return _basis_kets(t.ravel(), p.ravel())


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationReport:
    mutual_information: float
    discord: float
    minimizing_basis: MeasurementBasis
    method: str
    geometric_2norm: Optional[float] = None
    geometric_1norm: Optional[float] = None
    # brute-force value when a closed form was cross-checked
    reference_discord: Optional[float] = None
    closed_form_gap: Optional[float] = None


@dataclass(frozen=True)
class MeasurementOutcome:
    probabilities: Tuple[float, float]
    # None where the outcome probability is below PROBABILITY_FLOOR
    conditional_states: Tuple[Optional[DensityOperator], Optional[DensityOperator]]


# ---------------------------------------------------------------------------
# Single-qubit measurements on a bipartite split
# ---------------------------------------------------------------------------

def _split_measured(rho: HermitianOperator, factor: str) -> Tuple[np.ndarray, SubsystemLayout]:
    """Reorder rho as (rest, measured, rest', measured') with the measured qubit last"""
    layout = rho.layout
    if len(layout) < 2:
        raise LayoutError(f"need at least two factors to measure {factor!r}; layout has {layout.factor_names}")
    if layout.dim_of(factor) != 2:
        raise LayoutError(f"measured factor {factor!r} must be a qubit, has dimension {layout.dim_of(factor)}")
    pos = layout.position(factor)
    n = len(layout)
    order = [i for i in range(n) if i != pos] + [pos]
    tensor = rho.data.reshape(layout.factor_dims * 2).transpose(order + [i + n for i in order])
    rest = layout.without(factor)
    return tensor.reshape(rest.dim, 2, rest.dim, 2), rest


def _conditional_blocks(rho4: np.ndarray, kets: np.ndarray) -> np.ndarray:
    """Unnormalized <k_i| rho |k_i> on the measured qubit; shape (G, 2, d, d)"""
    return np.einsum("gib,abcd,gid->giac", kets.conj(), rho4, kets, optimize=True)


def _weighted_conditional_entropy(blocks: np.ndarray) -> np.ndarray:
    """sum_i p_i S(block_i / p_i) for every grid point"""
    probs = np.einsum("giaa->gi", blocks).real
    eigs = np.clip(np.linalg.eigvalsh(blocks), 0.0, None)
    # p S(sigma/p) = sum entr(lambda) - entr(p)
    terms = entr(eigs).sum(axis=-1) - entr(np.clip(probs, 0.0, None))
    terms = np.where(probs < PROBABILITY_FLOOR, 0.0, terms)
    return terms.sum(axis=-1) / LN2


def measure_and_collapse(rho: DensityOperator, factor: str, basis: MeasurementBasis) -> MeasurementOutcome:
    rho4, rest = _split_measured(rho, factor)
    blocks = _conditional_blocks(rho4, basis.kets()[np.newaxis])[0]
    probs = tuple(float(np.trace(b).real) for b in blocks)
    states = tuple(
        DensityOperator(b / p, rest) if p >= PROBABILITY_FLOOR else None
        for b, p in zip(blocks, probs)
    )
    return MeasurementOutcome(probabilities=probs, conditional_states=states)


def conditional_entropy(rho: DensityOperator, factor: str, basis: MeasurementBasis) -> float:
    rho4, _ = _split_measured(rho, factor)
    blocks = _conditional_blocks(rho4, basis.kets()[np.newaxis])
    return float(_weighted_conditional_entropy(blocks)[0])


def _minimize_measured(grid: GridSpec, per_chunk: Callable[[np.ndarray], np.ndarray]) -> Tuple[float, MeasurementBasis]:
    def surface(values: List[np.ndarray]) -> np.ndarray:
        thetas, phis = values
        kets = _mesh_kets(thetas, phis)
        return _chunked(per_chunk, kets).reshape(len(thetas), len(phis))

    value, (theta, phi) = _grid_minimize(surface, (THETA, PHI), grid)
    return value, MeasurementBasis(theta, phi)


def discord_bruteforce(rho: DensityOperator, measured_factor: str = "B",
                       grid: GridSpec | None = None) -> CorrelationReport:
    """D = S(measured) - S(total) + min over bases of the measured conditional entropy"""
    grid = grid or GridSpec()
    rho4, rest = _split_measured(rho, measured_factor)
    s_measured = von_neumann_entropy(reduced(rho, measured_factor))
    s_rest = von_neumann_entropy(reduced(rho, rest.factor_names))
    s_total = von_neumann_entropy(rho)

    cond, basis = _minimize_measured(
        grid, lambda kets: _weighted_conditional_entropy(_conditional_blocks(rho4, kets)))
    return CorrelationReport(
        mutual_information=s_rest + s_measured - s_total,
        discord=s_measured - s_total + cond,
        minimizing_basis=basis,
        method=BRUTE_FORCE,
    )


# ---------------------------------------------------------------------------
# X-states
# ---------------------------------------------------------------------------

def _binary_entropy(lam: float) -> float:
    """h((1 + lam)/2) in bits"""
    lam = min(max(lam, 0.0), 1.0)
    return float(entropy_of_probabilities(np.array([(1.0 + lam) / 2.0, (1.0 - lam) / 2.0])))


@dataclass(frozen=True)
class XCandidate:
    """Conditional entropy of one candidate measurement, with its intermediates"""

    k: float
    l: float
    mu: float
    p0: float
    p1: float
    theta0: float
    theta1: float
    beta: float
    conditional_entropy: float
    basis: MeasurementBasis


@dataclass(frozen=True)
class XStateParams:
    """Two-qubit X-state in the (A, B) basis, B measured.

    rho14 and rho23 are stored as magnitudes: local phase rotations make both
    anti-diagonal entries nonnegative without changing any correlation measure.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: float
    rho23: float

    def __post_init__(self):
        for name in ("rho11", "rho22", "rho33", "rho44"):
            value = float(getattr(self, name))
            if value < -PSD_TOL:
                raise PSDViolationError(f"diagonal entry {name} is negative", -value)
            object.__setattr__(self, name, max(value, 0.0))
        object.__setattr__(self, "rho14", abs(float(self.rho14)))
        object.__setattr__(self, "rho23", abs(float(self.rho23)))
        trace_dev = abs(self.rho11 + self.rho22 + self.rho33 + self.rho44 - 1.0)
        if trace_dev > TRACE_TOL:
            raise TraceError("X-state diagonal must sum to one", trace_dev)
        for off, a, b in ((self.rho14, self.rho11, self.rho44), (self.rho23, self.rho22, self.rho33)):
            excess = off * off - a * b
            if excess > PSD_TOL:
                raise PSDViolationError("X-state anti-diagonal exceeds the geometric mean of its diagonal", excess)

    @classmethod
    def from_operator(cls, rho: HermitianOperator) -> "XStateParams":
        data = rho.data
        if data.shape != (4, 4):
            raise NotXStateError(f"X-state must be 4x4, got {data.shape}")
        mask = np.ones((4, 4), dtype=bool)
        for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
            mask[i, j] = False
        stray = float(np.abs(data[mask]).max())
        if stray > X_SHAPE_TOL:
            raise NotXStateError(f"operator is not X-shaped (largest stray entry {stray:.3e})")
        d = data.real
        return cls(d[0, 0], d[1, 1], d[2, 2], d[3, 3], abs(data[0, 3]), abs(data[1, 2]))

    def to_operator(self) -> DensityOperator:
        data = np.diag([self.rho11, self.rho22, self.rho33, self.rho44]).astype(complex)
        data[0, 3] = data[3, 0] = self.rho14
        data[1, 2] = data[2, 1] = self.rho23
        return DensityOperator(data, SubsystemLayout.qubits("A", "B"))

    def candidate(self, k: float, mu: float, basis: MeasurementBasis) -> XCandidate:
        l = 1.0 - k
        p0 = k * (self.rho11 + self.rho33) + l * (self.rho22 + self.rho44)
        p1 = l * (self.rho11 + self.rho33) + k * (self.rho22 + self.rho44)
        beta = 4.0 * k * l * (self.rho14 + self.rho23) ** 2 - 16.0 * mu * self.rho14 * self.rho23
        diff_up = self.rho11 - self.rho33
        diff_down = self.rho22 - self.rho44

        def branch(weight, first, second):
            if weight < PROBABILITY_FLOOR:
                return 0.0
            return math.sqrt(max((first + second) ** 2 + beta, 0.0)) / weight

        theta0 = branch(p0, diff_up * k, diff_down * l)
        theta1 = branch(p1, diff_up * l, diff_down * k)
        entropy = 0.0
        for weight, lam in ((p0, theta0), (p1, theta1)):
            if weight >= PROBABILITY_FLOOR:
                entropy += weight * _binary_entropy(lam)
        return XCandidate(k, l, mu, p0, p1, theta0, theta1, beta, entropy, basis)

    def candidates(self) -> Tuple[XCandidate, ...]:
        """k = l = 1/2 with mu = 0, then k = 1 and k = 0 (both reported as theta = 0)"""
        return (
            self.candidate(0.5, 0.0, MeasurementBasis(math.pi / 2.0, 0.0)),
            self.candidate(1.0, 0.0, MeasurementBasis(0.0, 0.0)),
            self.candidate(0.0, 0.0, MeasurementBasis(0.0, 0.0)),
        )

    def entropies(self) -> Tuple[float, float, float]:
        """S(A), S(B), S(AB)"""
        s_a = float(entropy_of_probabilities(np.array([self.rho11 + self.rho22, self.rho33 + self.rho44])))
        s_b = float(entropy_of_probabilities(np.array([self.rho11 + self.rho33, self.rho22 + self.rho44])))
        eigs = []
        for a, d, c in ((self.rho11, self.rho44, self.rho14), (self.rho22, self.rho33, self.rho23)):
            mean, radius = (a + d) / 2.0, math.hypot((a - d) / 2.0, c)
            eigs.extend((mean + radius, mean - radius))
        s_ab = float(entropy_of_probabilities(np.array(eigs)))
        return s_a, s_b, s_ab


def xstate_discord(x: Union[XStateParams, HermitianOperator],
                   crosscheck: GridSpec | None = None) -> CorrelationReport:
    """Closed-form discord of an X-state with B measured.

    With crosscheck the brute-force oracle is run as well; a closed form
    beaten by more than CROSSCHECK_TOL is logged as a warning.
    """
    if not isinstance(x, XStateParams):
        x = XStateParams.from_operator(x)
    s_a, s_b, s_ab = x.entropies()
    best = min(x.candidates(), key=lambda c: c.conditional_entropy)
    report = CorrelationReport(
        mutual_information=s_a + s_b - s_ab,
        discord=s_b - s_ab + best.conditional_entropy,
        minimizing_basis=best.basis,
        method=CLOSED_FORM,
    )
    if crosscheck is None:
        return report

    reference = discord_bruteforce(x.to_operator(), "B", crosscheck).discord
    gap = report.discord - reference
    if gap > CROSSCHECK_TOL:
        logger.warning("brute-force discord %.9f beats every closed-form candidate (%.9f) by %.3e",
                       reference, report.discord, gap)
    return replace(report, reference_discord=reference, closed_form_gap=gap)


def werner_discord_formula(p) -> float:
    """(1/4) log2[(1+3p)^(1+3p) (1-p)^(1-p) / (1+p)^(2(1+p))]"""
    p = MixingProbability.coerce(p).p
    a, b, c = 1.0 + 3.0 * p, 1.0 - p, 1.0 + p
    return float((xlogy(a, a) + xlogy(b, b) - 2.0 * xlogy(c, c)) / (4.0 * LN2))


def tripartite_global_discord_formula(p) -> float:
    """(1/8) log2[(1+7p)^(1+7p) (1-p)^(1-p) / (1+3p)^(2(1+3p))]"""
    p = MixingProbability.coerce(p).p
    a, b, c = 1.0 + 7.0 * p, 1.0 - p, 1.0 + 3.0 * p
    return float((xlogy(a, a) + xlogy(b, b) - 2.0 * xlogy(c, c)) / (8.0 * LN2))


# ---------------------------------------------------------------------------
# Product measurements on every qubit
# ---------------------------------------------------------------------------

def _require_qubits(rho: HermitianOperator, minimum: int) -> SubsystemLayout:
    layout = rho.layout
    if len(layout) < minimum:
        raise LayoutError(f"need at least {minimum} qubit factors, got {layout.factor_names}")
    if any(d != 2 for d in layout.factor_dims):
        raise LayoutError(f"every factor must be a qubit, got dims {layout.factor_dims}")
    return layout


def _product_probabilities(rho: np.ndarray, kets: Sequence[np.ndarray]) -> np.ndarray:
    """Outcome distribution of product projective measurements.

    kets[j] has shape (s_j, outcome, component) for party j. Returns shape
    (s_1, ..., s_n, 2**n) with party 1's outcome most significant.
    """
    n = len(kets)
    tensor = rho.reshape((2,) * (2 * n))
    for j, k in enumerate(kets):
        remaining = n - j - 1
        lead = list(range(2 * j))
        ket_rest = list(range(2 * n, 2 * n + remaining))
        bra_rest = list(range(3 * n, 3 * n + remaining))
        x, y = 4 * n, 4 * n + 1
        s, o = 2 * j, 2 * j + 1
        tensor = np.einsum(
            k.conj(), [s, o, x],
            tensor, lead + [x] + ket_rest + [y] + bra_rest,
            k, [s, o, y],
            lead + [s, o] + ket_rest + bra_rest,
        )
    order = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    sizes = tuple(k.shape[0] for k in kets)
    return tensor.transpose(order).reshape(sizes + (2 ** n,)).real


def _local_dephasing_terms(rho_j: np.ndarray, kets: np.ndarray) -> np.ndarray:
    """S(phi_j(rho_j)) - S(rho_j) for each candidate basis of one party"""
    probs = np.einsum("sia,ab,sib->si", kets.conj(), rho_j, kets).real
    return entropy_of_probabilities(probs) - von_neumann_entropy(rho_j)


@dataclass(frozen=True)
class GlobalDiscordResult:
    value: float
    bases: Tuple[MeasurementBasis, ...]
    dephased_entropy: float
    state_entropy: float
    local_terms: Tuple[float, ...]
    # outcome label such as 'A+B−C−' -> probability under the optimal measurement
    projector_weights: Mapping[str, float] = field(repr=False)
    method: str = BRUTE_FORCE


def _outcome_labels(layout: SubsystemLayout) -> Tuple[str, ...]:
    return tuple(
        "".join(f"{name}{'+' if bit == 0 else '−'}" for name, bit in zip(layout.factor_names, bits))
        for bits in np.ndindex(*layout.factor_dims)
    )


def _global_terms(rho: HermitianOperator, thetas: Sequence[float], phis: Sequence[float]):
    kets = [_basis_kets(np.array([t]), np.array([f])) for t, f in zip(thetas, phis)]
    probs = _product_probabilities(rho.data, kets).reshape(-1)
    local = tuple(
        float(_local_dephasing_terms(reduced(rho, name).data, k)[0])
        for name, k in zip(rho.layout.factor_names, kets)
    )
    return probs, local


def global_discord_search(rho: DensityOperator, grid: GridSpec | None = None,
                          full_search: bool = False) -> GlobalDiscordResult:
    """Global discord over product projective measurements.

    The default search fixes the first party at theta = 0 and every phi at 0
    and grid-searches the remaining thetas. full_search additionally runs
    Nelder-Mead over every theta_j and phi_j from the grid optimum and a few
    seeded random starts.
    """
    grid = grid or GridSpec()
    layout = _require_qubits(rho, 2)
    n = len(layout)
    s_total = von_neumann_entropy(rho)
    reductions = [reduced(rho, name).data for name in layout.factor_names]
    first_kets = _basis_kets(np.zeros(1), np.zeros(1))
    first_local = float(_local_dephasing_terms(reductions[0], first_kets)[0])

    def surface(values: List[np.ndarray]) -> np.ndarray:
        kets = [first_kets] + [_basis_kets(v, np.zeros_like(v)) for v in values]
        shape = tuple(len(v) for v in values)
        dephased = entropy_of_probabilities(_product_probabilities(rho.data, kets)).reshape(shape)
        total = dephased - s_total - first_local
        for axis, (v, k) in enumerate(zip(values, kets[1:])):
            local = _local_dephasing_terms(reductions[axis + 1], k)
            total = total - local.reshape([-1 if i == axis else 1 for i in range(len(values))])
        return total

    value, point = _grid_minimize(surface, (THETA,) * (n - 1), grid)
    thetas = np.array((0.0,) + point)
    phis = np.zeros(n)

    if full_search:
        def objective(x: np.ndarray) -> float:
            probs, local = _global_terms(rho, x[:n], x[n:])
            return float(entropy_of_probabilities(probs)) - s_total - sum(local)

        rng = np.random.default_rng(0)
        starts = [np.concatenate([thetas, phis])]
        starts += [np.concatenate([rng.uniform(0, math.pi, n), rng.uniform(0, TWO_PI, n)]) for _ in range(4)]
        for start in starts:
            result = minimize(objective, start, method="Nelder-Mead",
                              options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 4000 * n})
            if result.fun < value:
                value = float(result.fun)
                thetas, phis = result.x[:n], result.x[n:]
        logger.debug("full global search settled at %.12f", value)

    bases = tuple(MeasurementBasis.from_angles(t, f) for t, f in zip(thetas, phis))
    probs, local = _global_terms(rho, [b.theta for b in bases], [b.phi for b in bases])
    weights = MappingProxyType(dict(zip(_outcome_labels(layout), (float(p) for p in probs))))
    return GlobalDiscordResult(
        value=value,
        bases=bases,
        dephased_entropy=float(entropy_of_probabilities(probs)),
        state_entropy=s_total,
        local_terms=local,
        projector_weights=weights,
    )


def global_discord(rho: DensityOperator, grid: GridSpec | None = None, full_search: bool = False) -> float:
    return global_discord_search(rho, grid, full_search).value


def bipartite_global_discord(rho: DensityOperator, grid: GridSpec | None = None) -> float:
    """Global definition restricted to two qubits"""
    if len(rho.layout) != 2:
        raise LayoutError(f"expected two qubit factors, got {rho.layout.factor_names}")
    return global_discord(rho, grid)


# ---------------------------------------------------------------------------
# Geometric discord
# ---------------------------------------------------------------------------

def geometric_discord_2norm(rho: DensityOperator, measured_factor: Optional[str] = "B",
                            grid: GridSpec | None = None) -> float:
    """min over axes of ||rho - sum_i (1 x pi_i) rho (1 x pi_i)||_2^2.

    With measured_factor=None every qubit is measured (product projectors).
    """
    if measured_factor is None:
        return geometric_discord_global(rho, grid)
    grid = grid or GridSpec()
    rho4, _ = _split_measured(rho, measured_factor)
    purity = float(np.vdot(rho.data, rho.data).real)

    def per_chunk(kets: np.ndarray) -> np.ndarray:
        blocks = _conditional_blocks(rho4, kets)
        # the measured state is block diagonal, so its purity is sum_i Tr block_i^2
        return purity - np.einsum("giab,giba->g", blocks, blocks).real

    value, _ = _minimize_measured(grid, per_chunk)
    return max(value, 0.0)


def geometric_discord_1norm(rho: DensityOperator, measured_factor: str = "B",
                            grid: GridSpec | None = None) -> float:
    """min over axes of the trace norm ||rho - rho'||_1"""
    grid = grid or GridSpec()
    rho4, rest = _split_measured(rho, measured_factor)
    dim = 2 * rest.dim
    flat = rho4.reshape(dim, dim)

    def per_chunk(kets: np.ndarray) -> np.ndarray:
        blocks = _conditional_blocks(rho4, kets)
        measured = np.einsum("giac,gib,gid->gabcd", blocks, kets, kets.conj()).reshape(-1, dim, dim)
        return np.abs(np.linalg.eigvalsh(flat[np.newaxis] - measured)).sum(axis=-1)

    value, _ = _minimize_measured(grid, per_chunk)
    return max(value, 0.0)


def geometric_discord_global(rho: DensityOperator, grid: GridSpec | None = None) -> float:
    """Tr rho^2 - max Tr phi(rho)^2 over product measurements of every qubit.

    Each party's axis is searched in theta with phi = 0.
    """
    grid = grid or GridSpec()
    layout = _require_qubits(rho, 2)
    purity = float(np.vdot(rho.data, rho.data).real)

    def surface(values: List[np.ndarray]) -> np.ndarray:
        kets = [_basis_kets(v, np.zeros_like(v)) for v in values]
        probs = _product_probabilities(rho.data, kets)
        return purity - (probs ** 2).sum(axis=-1)

    value, _ = _grid_minimize(surface, (THETA,) * len(layout), grid)
    return max(value, 0.0)


# ---------------------------------------------------------------------------
# Composite reports
# ---------------------------------------------------------------------------

def correlation_report(rho: DensityOperator, measured_factor: str = "B",
                       grid: GridSpec | None = None, one_norm: bool = True) -> CorrelationReport:
    grid = grid or GridSpec()
    report = discord_bruteforce(rho, measured_factor, grid)
    return replace(
        report,
        geometric_2norm=geometric_discord_2norm(rho, measured_factor, grid),
        geometric_1norm=geometric_discord_1norm(rho, measured_factor, grid) if one_norm else None,
    )


def unruh_discord(omega, weights, p, grid: GridSpec | None = None,
                  policy: TruncationPolicy | None = None, antiparticle: bool = False) -> CorrelationReport:
    """Discord of the beyond-single-mode state, closed form checked against brute force"""
    rho = effective_matrix(unruh_bipartite(omega, weights, p, policy, antiparticle=antiparticle))
    return xstate_discord(XStateParams.from_operator(rho), crosscheck=grid or GridSpec())
