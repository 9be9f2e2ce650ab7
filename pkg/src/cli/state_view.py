"""
Text rendering of effective helicity matrices for the `state` command
"""
from __future__ import annotations

from typing import List, Optional

import numpy as np

from core import state_factory
from core.densops import PSD_TOL, entropy_of_spectrum, spectrum
from core.fock_ledger import TruncationPolicy
from core.state_factory import BlockedDensity, DEFAULT_DENSE_DIM_CAP

ENTRY_DECIMALS = 6


def build_family_state(family: str, omega: float, p: float, omega_c: Optional[float] = None,
                       qr2: Optional[float] = None, policy: TruncationPolicy | None = None) -> BlockedDensity:
    if family == "tripartite":
        return state_factory.tripartite_werner(omega, omega if omega_c is None else omega_c, p, policy)
    if family == "unruh":
        return state_factory.unruh_bipartite(omega, 1.0 if qr2 is None else qr2, p, policy)
    return state_factory.bipartite_werner(omega, p, policy)


def _format_entry(value: complex) -> str:
    if abs(value.imag) > 10 ** -(ENTRY_DECIMALS + 1):
        return f"{value.real:.{ENTRY_DECIMALS}f}{value.imag:+.{ENTRY_DECIMALS}f}i"
    real = value.real
    if abs(real) < 0.5 * 10 ** -ENTRY_DECIMALS:
        real = 0.0  # no "-0.000000"
    return f"{real:.{ENTRY_DECIMALS}f}"


def format_matrix(data: np.ndarray, labels: List[str]) -> str:
    cells = [[_format_entry(complex(v)) for v in row] for row in data]
    width = max(max(len(c) for row in cells for c in row), max(len(label) for label in labels))
    label_width = max(len(label) for label in labels)
    lines = [" " * label_width + "  " + "  ".join(label.rjust(width) for label in labels)]
    for label, row in zip(labels, cells):
        lines.append(label.ljust(label_width) + "  " + "  ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


def render_state(blocked: BlockedDensity, dense: bool = False, dim_cap: int = DEFAULT_DENSE_DIM_CAP) -> str:
    """Effective matrix with basis labels, followed by trace/PSD diagnostics"""
    rho = state_factory.effective_matrix(blocked)
    labels = list(state_factory.helicity_labels(rho.layout))
    eigs = spectrum(rho)

    lines = [format_matrix(rho.data, labels), ""]
    lines.append(f"trace: {rho.trace():.{ENTRY_DECIMALS}f}")
    lines.append(f"min eigenvalue: {eigs.minimum:.3e}  eigenvalue sum: {eigs.total:.{ENTRY_DECIMALS}f}")
    lines.append(f"positive semidefinite: {'yes' if eigs.minimum >= -PSD_TOL else 'no'}")
    lines.append(f"Fock blocks: {len(blocked)}  captured mass: {blocked.captured_mass:.12f}  "
                 f"tail bound: {blocked.tail_bound:.3e}")

    if dense:
        expanded = state_factory.dense_expand(blocked, dim_cap)
        dense_eigs = spectrum(expanded)
        lines.append(f"dense dimension: {expanded.dim}  factors: {', '.join(expanded.layout.factor_names)}")
        lines.append(f"dense spectrum: max {dense_eigs.eigenvalues[0]:.6e}  min {dense_eigs.minimum:.3e}  "
                     f"nonzero {int((np.abs(dense_eigs.eigenvalues) > PSD_TOL).sum())}")
        lines.append(f"dense entropy: {entropy_of_spectrum(np.clip(dense_eigs.eigenvalues, 0.0, None)):.9f} bits")
    return "\n".join(lines)
