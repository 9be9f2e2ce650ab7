"""
Helicity-entangled density operators seen by accelerated observers

All traced states are diagonal in the Fock occupation of the accelerated
observers, so they are stored block-diagonally: one weight and one small
helicity block per Fock multi-index. Alice (A) is inertial and carries no
Fock index; Bob (B) and Charlie (C) each own one.

Helicity basis order is (A, B, C) with spin up before spin down, e.g. for two
parties: A+↑B−↑, A+↑B−↓, A+↓B−↑, A+↓B−↓.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple

import numpy as np

from core import fock_ledger
from core.densops import (
    DensityOperator,
    HermitianOperator,
    SubsystemLayout,
    hs_norm_sq,
    partial_transpose,
    trace_norm,
)
from core.errors import BlockShapeError, DimensionCapError, DomainError, LayoutError
from core.fock_ledger import TruncationPolicy

logger = logging.getLogger(__name__)

DEFAULT_DENSE_DIM_CAP = 4096

SPIN_SYMBOLS = ("↑", "↓")
OBSERVER_MOMENTUM = {"A": "+", "B": "−", "C": "−"}


@dataclass(frozen=True)
class HelicityLabel:
    momentum_sign: str
    spin: str

    def __post_init__(self):
        if self.momentum_sign not in ("+", "−"):
            raise DomainError(f"momentum sign must be + or −, got {self.momentum_sign!r}")
        if self.spin not in SPIN_SYMBOLS:
            raise DomainError(f"spin must be ↑ or ↓, got {self.spin!r}")

    def __str__(self):
        return f"{self.momentum_sign}{self.spin}"


@dataclass(frozen=True)
class MixingProbability:
    p: float

    def __post_init__(self):
        value = float(self.p)
        if not (0.0 <= value <= 1.0) or math.isnan(value):
            raise DomainError(f"mixing probability must lie in [0, 1], got {self.p}", field="p", value=self.p)
        object.__setattr__(self, "p", value)

    @classmethod
    def coerce(cls, value) -> "MixingProbability":
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class UnruhWeights:
    """|q_R|^2 and |q_L|^2 = 1 - |q_R|^2; q_R = 1 is the single-mode limit"""

    qR_sq: float

    def __post_init__(self):
        value = float(self.qR_sq)
        if not (0.0 <= value <= 1.0) or math.isnan(value):
            raise DomainError(f"|q_R|^2 must lie in [0, 1], got {self.qR_sq}", field="qR_sq", value=self.qR_sq)
        object.__setattr__(self, "qR_sq", value)

    @property
    def qL_sq(self) -> float:
        return 1.0 - self.qR_sq

    def swapped(self) -> "UnruhWeights":
        return UnruhWeights(self.qL_sq)

    @classmethod
    def coerce(cls, value) -> "UnruhWeights":
        return value if isinstance(value, cls) else cls(value)


@dataclass(frozen=True)
class FockBlock:
    weight: float
    block: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class BlockedDensity:
    """Fock-diagonal density operator: sum over keys of weight * |key><key| (x) block.

    fock_owners names the party owning each entry of a key.
    """

    layout: SubsystemLayout
    fock_owners: Tuple[str, ...]
    blocks: Mapping[Tuple[int, ...], FockBlock]
    tail_bound: float = 0.0

    def __post_init__(self):
        for owner in self.fock_owners:
            if owner not in self.layout:
                raise LayoutError(f"Fock owner {owner!r} is not a helicity factor")
        frozen = {}
        for key in sorted(self.blocks):
            entry = self.blocks[key]
            if len(key) != len(self.fock_owners):
                raise LayoutError(f"Fock key {key} does not match owners {self.fock_owners}")
            block = np.array(entry.block, dtype=complex)
            block.setflags(write=False)
            frozen[tuple(key)] = FockBlock(float(entry.weight), block)
        object.__setattr__(self, "blocks", MappingProxyType(frozen))

    def __iter__(self) -> Iterator[Tuple[Tuple[int, ...], FockBlock]]:
        return iter(self.blocks.items())

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def captured_mass(self) -> float:
        return float(sum(entry.weight * np.trace(entry.block).real for entry in self.blocks.values()))

    def normalized(self) -> Iterator[Tuple[Tuple[int, ...], float, np.ndarray]]:
        """Blocks with weights renormalized by the captured mass"""
        mass = self.captured_mass
        for key, entry in self.blocks.items():
            yield key, entry.weight / mass, entry.block

    def stacked(self) -> Tuple[np.ndarray, np.ndarray]:
        """(normalized weights, blocks stacked along a leading axis)"""
        self.block_shape()
        mass = self.captured_mass
        weights = np.array([entry.weight for entry in self.blocks.values()]) / mass
        return weights, np.stack([entry.block for entry in self.blocks.values()])

    def block_shape(self) -> Tuple[int, int]:
        shapes = {entry.block.shape for entry in self.blocks.values()}
        if len(shapes) != 1:
            raise BlockShapeError(f"blocks have inhomogeneous shapes {sorted(shapes)}")
        shape = shapes.pop()
        if shape != (self.layout.dim, self.layout.dim):
            raise BlockShapeError(f"block shape {shape} does not match helicity layout {self.layout.dim}")
        return shape

    def fock_extents(self) -> Tuple[Tuple[int, int], ...]:
        """(lowest, highest) occupation per Fock owner"""
        keys = np.array(list(self.blocks), dtype=int).reshape(len(self.blocks), len(self.fock_owners))
        return tuple((int(keys[:, i].min()), int(keys[:, i].max())) for i in range(len(self.fock_owners)))

    @property
    def dense_dim(self) -> int:
        fock_dim = 1
        for lo, hi in self.fock_extents():
            fock_dim *= hi - lo + 1
        return fock_dim * self.layout.dim

    def trace_out(self, party: str) -> "BlockedDensity":
        """Trace a party's helicity factor and merge blocks over its Fock index"""
        from core.densops import _partial_trace_array

        kept_layout = self.layout.without(party)
        owner_pos = self.fock_owners.index(party) if party in self.fock_owners else None
        owners = tuple(o for o in self.fock_owners if o != party)

        merged: Dict[Tuple[int, ...], Tuple[float, np.ndarray]] = {}
        for key, entry in self.blocks.items():
            reduced = _partial_trace_array(entry.block, self.layout, party)
            new_key = key if owner_pos is None else key[:owner_pos] + key[owner_pos + 1:]
            weight, acc = merged.get(new_key, (0.0, np.zeros_like(reduced)))
            merged[new_key] = (weight + entry.weight, acc + entry.weight * reduced)

        blocks = {}
        for key, (weight, acc) in merged.items():
            if weight > 0.0:
                blocks[key] = FockBlock(weight, acc / weight)
        return BlockedDensity(kept_layout, owners, blocks, self.tail_bound)


def helicity_layout(n_parties: int) -> SubsystemLayout:
    return SubsystemLayout.qubits(*("A", "B", "C")[:n_parties])


def helicity_labels(layout: SubsystemLayout) -> Tuple[str, ...]:
    """Basis labels like 'A+↑B−↓' in composite index order"""
    labels = []
    for index in np.ndindex(*layout.factor_dims):
        parts = []
        for name, spin in zip(layout.factor_names, index):
            label = HelicityLabel(OBSERVER_MOMENTUM.get(name, "−"), SPIN_SYMBOLS[spin])
            parts.append(f"{name}{label}")
        labels.append("".join(parts))
    return tuple(labels)


def werner_block(p: float, n_qubits: int, entangled: Tuple[int, int]) -> np.ndarray:
    """(1 - p)/2^N I + p |psi><psi| with psi = (|i> + |j>)/sqrt(2)"""
    dim = 2 ** n_qubits
    psi = np.zeros(dim)
    psi[list(entangled)] = 1.0 / math.sqrt(2.0)
    return (1.0 - p) / dim * np.eye(dim) + p * np.outer(psi, psi)


# |A+↑ B−↓> + |A+↓ B−↑>
BIPARTITE_PAIR = (1, 2)
# |A+↑ B−↓ C−↓> + |A+↓ B−↑ C−↑>
TRIPARTITE_PAIR = (3, 4)


def bipartite_werner(omega, p, policy: TruncationPolicy | None = None) -> BlockedDensity:
    """Alice inertial, Bob accelerated; Bob's region-I occupation n + 1 carries w_n"""
    mixing = MixingProbability.coerce(p)
    series = fock_ledger.weight_series(omega, policy)
    block = werner_block(mixing.p, 2, BIPARTITE_PAIR)
    blocks = {(n + 1,): FockBlock(w, block) for n, w in enumerate(series.weights)}
    return BlockedDensity(helicity_layout(2), ("B",), blocks, series.tail_bound)


def tripartite_werner(omega_b, omega_c, p, policy: TruncationPolicy | None = None) -> BlockedDensity:
    mixing = MixingProbability.coerce(p)
    series_b = fock_ledger.weight_series(omega_b, policy)
    series_c = fock_ledger.weight_series(omega_c, policy)
    block = werner_block(mixing.p, 3, TRIPARTITE_PAIR)
    blocks = {}
    for n, wb in enumerate(series_b.weights):
        for m, wc in enumerate(series_c.weights):
            blocks[(n + 1, m + 1)] = FockBlock(wb * wc, block)
    tail = series_b.tail_bound + series_c.tail_bound - series_b.tail_bound * series_c.tail_bound
    return BlockedDensity(helicity_layout(3), ("B", "C"), blocks, tail)


def _unruh_occupation_weights(series: fock_ledger.FockWeightSeries, weights: UnruhWeights) -> Dict[int, float]:
    occupation: Dict[int, float] = {}
    for n, w in enumerate(series.weights):
        occupation[n] = occupation.get(n, 0.0) + weights.qL_sq * w
        occupation[n + 1] = occupation.get(n + 1, 0.0) + weights.qR_sq * w
    return occupation


def unruh_bipartite(omega, weights, p, policy: TruncationPolicy | None = None,
                    antiparticle: bool = False) -> BlockedDensity:
    """Beyond single mode: |q_L|^2 blocks at occupation n, |q_R|^2 blocks at n + 1.

    antiparticle=True gives the Alice-AntiBob matrix (q_R and q_L exchanged).
    No q_L q_R coherences are kept; see unruh_coherence_gap for their size.
    """
    mixing = MixingProbability.coerce(p)
    unruh = UnruhWeights.coerce(weights)
    if antiparticle:
        unruh = unruh.swapped()
    series = fock_ledger.weight_series(omega, policy)
    block = werner_block(mixing.p, 2, BIPARTITE_PAIR)
    blocks = {(k,): FockBlock(w, block)
              for k, w in _unruh_occupation_weights(series, unruh).items() if w > 0.0}
    return BlockedDensity(helicity_layout(2), ("B",), blocks, series.tail_bound)


def effective_matrix(blocked: BlockedDensity) -> DensityOperator:
    """Helicity-only operator with the Fock sums collapsed and renormalized"""
    blocked.block_shape()
    total = sum(weight * block for _, weight, block in blocked.normalized())
    return DensityOperator(total, blocked.layout)


def dense_expand(blocked: BlockedDensity, dim_cap: int | None = None) -> DensityOperator:
    """Full (Fock x helicity) operator; Fock factors are named 'n' + owner.

    Fock factor k spans occupations lowest..highest present in the keys.
    """
    cap = DEFAULT_DENSE_DIM_CAP if dim_cap is None else dim_cap
    blocked.block_shape()
    dim = blocked.dense_dim
    if dim > cap:
        raise DimensionCapError(dim, cap)

    extents = blocked.fock_extents()
    fock_dims = tuple(hi - lo + 1 for lo, hi in extents)
    fock_layout = SubsystemLayout(tuple(f"n{owner}" for owner in blocked.fock_owners), fock_dims)
    layout = fock_layout.concat(blocked.layout)

    h = blocked.layout.dim
    data = np.zeros((dim, dim), dtype=complex)
    for key, weight, block in blocked.normalized():
        offset = np.ravel_multi_index(tuple(k - lo for k, (lo, _) in zip(key, extents)), fock_dims) if key else 0
        start = int(offset) * h
        data[start:start + h, start:start + h] = weight * block
    logger.debug("dense expansion: %d blocks, dimension %d", len(blocked), dim)
    return DensityOperator(data, layout)


@dataclass(frozen=True)
class CoherenceGap:
    """Printed vs literal region-II trace of the single-photon Unruh state"""

    hs_distance_sq: float
    trace_distance: float
    negativity_printed: float
    negativity_literal: float
    max_coherence: float


def _unruh_fock_states(omega, weights: UnruhWeights, policy: TruncationPolicy | None):
    series = fock_ledger.weight_series(omega, policy)
    size = series.cutoff + 2
    amplitudes = np.zeros((size, size))
    q_r = math.sqrt(weights.qR_sq)
    q_l = math.sqrt(weights.qL_sq)
    for n, w in enumerate(series.weights):
        c_n = math.sqrt(w)
        # rows: region-I occupation, columns: region-II occupation
        amplitudes[n, n + 1] += q_l * c_n
        amplitudes[n + 1, n] += q_r * c_n
    literal = amplitudes @ amplitudes.T
    literal /= np.trace(literal)
    printed = np.diag(np.diag(literal))
    return literal, printed


def unruh_literal_state(omega, weights, p, policy: TruncationPolicy | None = None,
                        antiparticle: bool = False) -> DensityOperator:
    """Dense operator from tracing region II literally, q_L q_R coherences included"""
    mixing = MixingProbability.coerce(p)
    unruh = UnruhWeights.coerce(weights)
    if antiparticle:
        unruh = unruh.swapped()
    literal, _ = _unruh_fock_states(omega, unruh, policy)
    block = werner_block(mixing.p, 2, BIPARTITE_PAIR)
    layout = SubsystemLayout(("nB",), (literal.shape[0],)).concat(helicity_layout(2))
    return DensityOperator(np.kron(literal, block), layout)


def unruh_coherence_gap(omega, weights, p, policy: TruncationPolicy | None = None) -> CoherenceGap:
    mixing = MixingProbability.coerce(p)
    unruh = UnruhWeights.coerce(weights)
    literal_fock, printed_fock = _unruh_fock_states(omega, unruh, policy)
    block = werner_block(mixing.p, 2, BIPARTITE_PAIR)
    layout = SubsystemLayout(("nB",), (literal_fock.shape[0],)).concat(helicity_layout(2))

    literal = HermitianOperator(np.kron(literal_fock, block), layout)
    printed = HermitianOperator(np.kron(printed_fock, block), layout)
    diff = literal - printed
    negativity_literal = trace_norm(partial_transpose(literal, "A")) - 1.0
    negativity_printed = trace_norm(partial_transpose(printed, "A")) - 1.0
    off_diagonal = literal_fock - printed_fock
    return CoherenceGap(
        hs_distance_sq=hs_norm_sq(diff),
        trace_distance=trace_norm(diff),
        negativity_printed=negativity_printed,
        negativity_literal=negativity_literal,
        max_coherence=float(np.abs(off_diagonal).max()) if off_diagonal.size else 0.0,
    )
