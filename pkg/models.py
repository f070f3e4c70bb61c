from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List

import config
from base_space import BaseSpace
from errors import InvalidBounds


@dataclass(frozen=True)
class Bounds:
    max_breakpoints: int = config.DEFAULT_MAX_BREAKPOINTS
    max_family: int = config.DEFAULT_MAX_FAMILY
    max_intervals: int = config.DEFAULT_MAX_INTERVALS
    max_denominator: int = config.DEFAULT_MAX_DENOMINATOR

    def __post_init__(self):
        if min(self.max_breakpoints, self.max_family, self.max_intervals, self.max_denominator) < 1:
            raise InvalidBounds("generator bounds must be positive")


@dataclass
class SuiteConfig:
    suite: str
    space: BaseSpace
    seed: int = config.DEFAULT_SEED
    cases: int = config.DEFAULT_CASES
    bounds: Bounds = field(default_factory=Bounds)


@dataclass
class Violation:
    case: int
    check: str
    # Fully serialised, so it can be pasted back in as a fixture
    counterexample: Dict[str, Any]


@dataclass
class RunReport:
    suite: str
    seed: int
    cases: int
    violations: List[Violation] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations
