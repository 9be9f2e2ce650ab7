"""
Inclusive parameter ranges written as start:stop:step
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass
from typing import Tuple

from core.errors import DomainError

# values closer than this to the stop value still count as reaching it
RANGE_SLACK = 1e-9


@dataclass(frozen=True)
class RangeSpec:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        for name in ("start", "stop", "step"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"range {name} must be finite, got {value}", field=name, value=value)
            object.__setattr__(self, name, value)
        if self.step <= 0.0:
            raise DomainError(f"range step must be positive, got {self.step}", field="step", value=self.step)
        if self.stop < self.start - RANGE_SLACK * self.step:
            raise DomainError(f"empty range {self.start}:{self.stop}:{self.step}")

    @classmethod
    def single(cls, value: float) -> "RangeSpec":
        return cls(value, value, 1.0)

    def values(self) -> Tuple[float, ...]:
        count = int(math.floor((self.stop - self.start) / self.step + RANGE_SLACK)) + 1
        # rounding keeps 0.1:2.0:0.1 free of 0.30000000000000004 artifacts
        return tuple(round(self.start + i * self.step, 12) for i in range(count))

    def __len__(self) -> int:
        return len(self.values())


def parse_range(text: str) -> RangeSpec:
    """'0.5' is a single value, '0.1:2.0:0.1' an inclusive range"""
    parts = text.strip().split(":")
    try:
        numbers = [float(part) for part in parts]
    except ValueError:
        raise DomainError(f"not a number or start:stop:step range: {text!r}") from None
    if len(numbers) == 1:
        return RangeSpec.single(numbers[0])
    if len(numbers) == 3:
        return RangeSpec(*numbers)
    raise DomainError(f"expected VALUE or START:STOP:STEP, got {text!r}")


def range_arg(text: str) -> RangeSpec:
    """argparse type wrapper so malformed ranges become usage errors"""
    try:
        return parse_range(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
