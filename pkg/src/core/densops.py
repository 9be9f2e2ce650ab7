"""
Dense Hermitian operator algebra over labeled tensor factors

Composite indices enumerate the rightmost factor fastest, i.e. the layout
(A, B) with dims (2, 2) orders the basis as |00>, |01>, |10>, |11>.
All entropies are in bits and use 0 * log 0 = 0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
from scipy.special import entr

from core.errors import (
    LayoutError,
    NonHermitianError,
    PSDViolationError,
    TraceError,
)

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

LN2 = math.log(2.0)

Labels = Union[str, Sequence[str]]


@dataclass(frozen=True)
class SubsystemLayout:
    factor_names: Tuple[str, ...]
    factor_dims: Tuple[int, ...]

    def __post_init__(self):
        names = tuple(self.factor_names)
        dims = tuple(int(d) for d in self.factor_dims)
        if len(names) != len(dims):
            raise LayoutError(f"{len(names)} names but {len(dims)} dimensions")
        if len(set(names)) != len(names):
            raise LayoutError(f"factor names must be unique: {names}")
        if any(d < 1 for d in dims):
            raise LayoutError(f"factor dimensions must be positive: {dims}")
        object.__setattr__(self, "factor_names", names)
        object.__setattr__(self, "factor_dims", dims)

    @classmethod
    def qubits(cls, *names: str) -> "SubsystemLayout":
        return cls(tuple(names), (2,) * len(names))

    @property
    def dim(self) -> int:
        return int(np.prod(self.factor_dims, dtype=np.int64)) if self.factor_dims else 1

    def __len__(self) -> int:
        return len(self.factor_names)

    def __contains__(self, label) -> bool:
        return label in self.factor_names

    def position(self, label: str) -> int:
        try:
            return self.factor_names.index(label)
        except ValueError:
            raise LayoutError(f"unknown factor {label!r}; layout has {self.factor_names}") from None

    def dim_of(self, label: str) -> int:
        return self.factor_dims[self.position(label)]

    def positions(self, labels: Labels) -> Tuple[int, ...]:
        return tuple(self.position(label) for label in _as_labels(labels))

    def without(self, labels: Labels) -> "SubsystemLayout":
        drop = set(self.positions(labels))
        keep = [i for i in range(len(self)) if i not in drop]
        return SubsystemLayout(tuple(self.factor_names[i] for i in keep),
                               tuple(self.factor_dims[i] for i in keep))

    def concat(self, other: "SubsystemLayout") -> "SubsystemLayout":
        clash = set(self.factor_names) & set(other.factor_names)
        if clash:
            raise LayoutError(f"factor names collide: {sorted(clash)}")
        return SubsystemLayout(self.factor_names + other.factor_names,
                               self.factor_dims + other.factor_dims)


def _as_labels(labels: Labels) -> Tuple[str, ...]:
    if isinstance(labels, str):
        return (labels,)
    return tuple(labels)


class HermitianOperator:
    """Dense Hermitian matrix on a labeled tensor product; may be indefinite"""

    def __init__(self, entries, layout: SubsystemLayout | None = None, validate: bool = True):
        data = np.array(entries, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise LayoutError(f"operator must be square, got shape {data.shape}")
        if layout is None:
            layout = SubsystemLayout(("S",), (data.shape[0],))
        if layout.dim != data.shape[0]:
            raise LayoutError(f"layout dimension {layout.dim} does not match operator {data.shape[0]}")
        if validate:
            deviation = float(np.max(np.abs(data - data.conj().T))) if data.size else 0.0
            if deviation > HERMITIAN_TOL:
                raise NonHermitianError("operator is not Hermitian", deviation)
        data.setflags(write=False)
        self._data = data
        self._layout = layout

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def layout(self) -> SubsystemLayout:
        return self._layout

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    def trace(self) -> float:
        return float(np.trace(self._data).real)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        if other.layout != self.layout:
            raise LayoutError("cannot subtract operators with different layouts")
        return HermitianOperator(self._data - other.data, self.layout)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, layout={self.layout.factor_names})"


class DensityOperator(HermitianOperator):
    """Hermitian, unit-trace, positive semidefinite operator"""

    def __init__(self, entries, layout: SubsystemLayout | None = None, validate: bool = True):
        super().__init__(entries, layout, validate=validate)
        if validate:
            trace_dev = abs(np.trace(self.data) - 1.0)
            if trace_dev > TRACE_TOL:
                raise TraceError("density operator must have unit trace", float(trace_dev))
            min_eig = float(np.linalg.eigvalsh(self.data).min())
            if min_eig < -PSD_TOL:
                raise PSDViolationError("density operator has a negative eigenvalue", -min_eig)

    @classmethod
    def from_ket(cls, ket, layout: SubsystemLayout | None = None) -> "DensityOperator":
        vec = np.asarray(ket, dtype=complex).ravel()
        vec = vec / np.linalg.norm(vec)
        return cls(np.outer(vec, vec.conj()), layout)

    @classmethod
    def maximally_mixed(cls, layout: SubsystemLayout) -> "DensityOperator":
        return cls(np.eye(layout.dim) / layout.dim, layout)


Operand = Union[HermitianOperator, np.ndarray]


def _matrix(h: Operand) -> np.ndarray:
    if isinstance(h, HermitianOperator):
        return h.data
    return np.asarray(h, dtype=complex)


def _rebuild(template: HermitianOperator, data: np.ndarray, layout: SubsystemLayout):
    if isinstance(template, DensityOperator):
        return DensityOperator(data, layout)
    return HermitianOperator(data, layout)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.sort(np.asarray(self.eigenvalues, dtype=float))[::-1].copy()
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    @property
    def total(self) -> float:
        return float(self.eigenvalues.sum())

    @property
    def minimum(self) -> float:
        return float(self.eigenvalues[-1])


def tensor_product(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    layout = a.layout.concat(b.layout)
    data = np.kron(a.data, b.data)
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(data, layout)
    return HermitianOperator(data, layout)


def _partial_trace_array(data: np.ndarray, layout: SubsystemLayout, labels: Labels) -> np.ndarray:
    positions = sorted(layout.positions(labels))
    dims = layout.factor_dims
    n = len(dims)
    tensor = data.reshape(dims + dims)
    # trace the highest positions first so lower axis numbers stay valid
    for count, pos in enumerate(reversed(positions)):
        current = n - count
        tensor = np.trace(tensor, axis1=pos, axis2=pos + current)
    kept = layout.without(labels)
    return tensor.reshape(kept.dim, kept.dim)


def partial_trace(rho: HermitianOperator, factor: Labels) -> HermitianOperator:
    """Trace out one factor (or several) and drop them from the layout"""
    data = _partial_trace_array(rho.data, rho.layout, factor)
    return _rebuild(rho, data, rho.layout.without(factor))


def reduced(rho: HermitianOperator, keep: Labels) -> HermitianOperator:
    """Reduced operator on the kept factors, in layout order"""
    keep = set(_as_labels(keep))
    for label in keep:
        rho.layout.position(label)
    drop = [name for name in rho.layout.factor_names if name not in keep]
    if not drop:
        return rho
    return partial_trace(rho, drop)


def partial_transpose_array(data: np.ndarray, layout: SubsystemLayout, labels: Labels) -> np.ndarray:
    """Partial transpose of one matrix or of a stack of matrices (leading axes)"""
    dims = layout.factor_dims
    n = len(dims)
    batch = data.shape[:-2]
    lead = len(batch)
    tensor = data.reshape(batch + dims + dims)
    for pos in layout.positions(labels):
        tensor = np.swapaxes(tensor, lead + pos, lead + pos + n)
    return tensor.reshape(data.shape)


def partial_transpose(rho: HermitianOperator, factor: Labels) -> HermitianOperator:
    """Transpose on the named factor(s); Hermitian, unit trace, possibly indefinite"""
    data = partial_transpose_array(rho.data, rho.layout, factor)
    return HermitianOperator(data, rho.layout, validate=False)


def spectrum(h: Operand) -> Spectrum:
    data = _matrix(h)
    deviation = float(np.max(np.abs(data - data.conj().T))) if data.size else 0.0
    if deviation > HERMITIAN_TOL:
        raise NonHermitianError("spectrum requires a Hermitian operator", deviation)
    return Spectrum(np.linalg.eigvalsh(data))


def entropy_of_probabilities(values: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits along the last axis, clamping tiny negatives to zero"""
    clipped = np.clip(np.asarray(values, dtype=float), 0.0, None)
    return entr(clipped).sum(axis=-1) / LN2


def entropy_of_spectrum(eigenvalues: Iterable[float]) -> float:
    values = np.asarray(list(eigenvalues), dtype=float)
    if values.size and values.min() < -PSD_TOL:
        raise PSDViolationError("entropy of an operator with a negative eigenvalue", -float(values.min()))
    return float(entropy_of_probabilities(values))


def von_neumann_entropy(rho: Operand) -> float:
    return entropy_of_spectrum(spectrum(rho).eigenvalues)


def trace_norm(h: Operand) -> float:
    return float(np.abs(spectrum(h).eigenvalues).sum())


def hs_norm_sq(h: Operand) -> float:
    data = _matrix(h)
    return float(np.vdot(data, data).real)


def measured_relative_entropy(rho: Operand, dephased: Operand) -> float:
    """S(dephased) - S(rho) for a dephased version of rho"""
    return von_neumann_entropy(dephased) - von_neumann_entropy(rho)


def mutual_information(rho: HermitianOperator, a: Labels, b: Labels) -> float:
    s_a = von_neumann_entropy(reduced(rho, a))
    s_b = von_neumann_entropy(reduced(rho, b))
    s_ab = von_neumann_entropy(reduced(rho, _as_labels(a) + _as_labels(b)))
    return s_a + s_b - s_ab


def embed_factor_operator(op: np.ndarray, layout: SubsystemLayout, label: str) -> np.ndarray:
    """Lift an operator on one factor to the whole space (identity elsewhere)"""
    pos = layout.position(label)
    result = np.ones((1, 1), dtype=complex)
    for i, d in enumerate(layout.factor_dims):
        result = np.kron(result, op if i == pos else np.eye(d))
    return result


def dephase(rho: HermitianOperator, projectors: dict) -> HermitianOperator:
    """Sum over product projectors pi_k rho pi_k.

    projectors maps a factor label to the list of orthogonal projectors
    measured on that factor; unlisted factors are left untouched.
    """
    data = rho.data
    for label, family in projectors.items():
        lifted = [embed_factor_operator(np.asarray(p, dtype=complex), rho.layout, label) for p in family]
        data = sum(p @ data @ p for p in lifted)
    return _rebuild(rho, data, rho.layout)
