"""
Parameter sweeps over (omega, p, qr2) grids

Rows are computed on a thread pool and written by a single writer in the
fixed order omega (outer), p, qr2 (inner), so the output is byte-identical
across runs with the same configuration.
"""
from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, TextIO, Tuple

import numpy as np

from cli.ranges import RangeSpec
from cli.state_view import build_family_state
from core import discord, entanglement, state_factory
from core.discord import GridSpec
from core.errors import DomainError, RindlerBoxError
from core.fock_ledger import AccelerationParam, TruncationPolicy

logger = logging.getLogger(__name__)

MEASURES = ("negativity", "log_negativity", "pi_tangle", "discord", "global_discord", "geo2", "geo1")
FAMILIES = ("bipartite", "tripartite", "unruh")
FORMATS = ("csv", "json")
TRIPARTITE_MEASURES = frozenset({"pi_tangle"})
HEADER = ("omega", "p", "qr2", "measure", "value")


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ""
    return f"{value:.9g}"


@dataclass(frozen=True)
class SweepConfig:
    measure: str
    omega_range: RangeSpec
    p_range: RangeSpec
    qr2_range: Optional[RangeSpec] = None
    family: Optional[str] = None
    omega_c: Optional[float] = None
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    grid: GridSpec = field(default_factory=GridSpec)
    format: str = "csv"
    workers: int = 4

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise DomainError(f"unknown measure {self.measure!r}; choose from {', '.join(MEASURES)}")
        if self.format not in FORMATS:
            raise DomainError(f"unknown format {self.format!r}; choose from {', '.join(FORMATS)}")
        if self.workers < 1:
            raise DomainError(f"workers must be positive, got {self.workers}", field="workers", value=self.workers)
        family = self.family or self._infer_family()
        if family not in FAMILIES:
            raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        if self.measure in TRIPARTITE_MEASURES and family != "tripartite":
            raise DomainError(f"measure {self.measure} needs the tripartite family, got {family}")
        if self.qr2_range is not None and family != "unruh":
            raise DomainError("--qr2 only applies to the unruh family")
        if self.omega_c is not None and family != "tripartite":
            raise DomainError("--omega-c only applies to the tripartite family")
        self._check_domain()
        object.__setattr__(self, "family", family)

    def _check_domain(self):
        """Every grid value must be in range before any row is computed"""
        for omega in self.omega_range.values():
            AccelerationParam(omega)
        if self.omega_c is not None:
            AccelerationParam(self.omega_c)
        for p in self.p_range.values():
            state_factory.MixingProbability(p)
        if self.qr2_range is not None:
            for qr2 in self.qr2_range.values():
                state_factory.UnruhWeights(qr2)

    def _infer_family(self) -> str:
        if self.measure in TRIPARTITE_MEASURES or self.measure == "global_discord":
            return "tripartite"
        if self.qr2_range is not None:
            return "unruh"
        return "bipartite"

    def points(self) -> List[Tuple[float, float, Optional[float]]]:
        """Grid points in output order"""
        qr2_values = self.qr2_range.values() if self.qr2_range is not None else (None,)
        if self.family == "unruh" and self.qr2_range is None:
            qr2_values = (1.0,)
        return list(product(self.omega_range.values(), self.p_range.values(), qr2_values))


@dataclass(frozen=True)
class SweepRow:
    omega: float
    p: float
    qr2: Optional[float]
    measure: str
    value: float
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]

    @property
    def failed(self) -> int:
        return sum(1 for row in self.rows if row.error is not None)


def build_state(config: SweepConfig, omega: float, p: float, qr2: Optional[float]) -> state_factory.BlockedDensity:
    return build_family_state(config.family, omega, p, config.omega_c, qr2, config.policy)


def _global(blocked: state_factory.BlockedDensity, grid: GridSpec) -> float:
    rho = state_factory.effective_matrix(blocked)
    if len(rho.layout) == 2:
        return discord.bipartite_global_discord(rho, grid)
    return discord.global_discord(rho, grid)


Evaluator = Callable[[state_factory.BlockedDensity, GridSpec], float]

EVALUATORS: Dict[str, Evaluator] = {
    "negativity": lambda b, g: entanglement.trace_norm_negativity(b, "A").value,
    "log_negativity": lambda b, g: entanglement.log_negativity(b, "A"),
    "pi_tangle": lambda b, g: entanglement.pi_tangle(b).pi,
    "discord": lambda b, g: discord.discord_bruteforce(state_factory.effective_matrix(b), "B", g).discord,
    "global_discord": _global,
    "geo2": lambda b, g: discord.geometric_discord_2norm(state_factory.effective_matrix(b), "B", g),
    "geo1": lambda b, g: discord.geometric_discord_1norm(state_factory.effective_matrix(b), "B", g),
}


def evaluate_point(config: SweepConfig, omega: float, p: float, qr2: Optional[float]) -> SweepRow:
    try:
        blocked = build_state(config, omega, p, qr2)
        value = float(EVALUATORS[config.measure](blocked, config.grid))
        return SweepRow(omega, p, qr2, config.measure, value)
    except (RindlerBoxError, ArithmeticError, np.linalg.LinAlgError) as exc:
        logger.error("sweep row omega=%g p=%g qr2=%s failed: %s", omega, p, qr2, exc)
        return SweepRow(omega, p, qr2, config.measure, math.nan, f"{type(exc).__name__}: {exc}")


def run_sweep(config: SweepConfig) -> SweepResult:
    points = config.points()
    logger.info("sweeping %s over %d points with %d workers", config.measure, len(points), config.workers)
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        rows = list(pool.map(lambda point: evaluate_point(config, *point), points))
    return SweepResult(rows)


def write_csv(result: SweepResult, stream: TextIO):
    with_errors = result.failed > 0
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(HEADER + (("error",) if with_errors else ()))
    for row in result.rows:
        fields = [format_number(row.omega), format_number(row.p), format_number(row.qr2),
                  row.measure, "nan" if math.isnan(row.value) else format_number(row.value)]
        if with_errors:
            fields.append(row.error or "")
        writer.writerow(fields)


def write_json(result: SweepResult, stream: TextIO):
    with_errors = result.failed > 0
    records = []
    for row in result.rows:
        record = {
            "omega": row.omega,
            "p": row.p,
            "qr2": row.qr2,
            "measure": row.measure,
            "value": None if math.isnan(row.value) else float(format_number(row.value)),
        }
        if with_errors:
            record["error"] = row.error
        records.append(record)
    json.dump(records, stream, indent=2)
    stream.write("\n")


def write_result(result: SweepResult, stream: TextIO, fmt: str = "csv"):
    (write_json if fmt == "json" else write_csv)(result, stream)
