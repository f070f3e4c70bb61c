"""
Finitely presented elements K = (pi(K), K_X, K_omega) of the R-forest F(X).

An element is a strictly increasing breakpoint sequence starting at 0, one base point
per breakpoint, and one natural label per breakpoint except the last. Elements are
plain immutable values; the base space is passed in wherever the metric of X matters.
"""
from __future__ import annotations
import logging
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Tuple, Union

from base_space import BasePoint, BaseSpace, FunctionSpec
from errors import (
    LabelOnSupremum,
    LipschitzViolation,
    MalformedElement,
    MissingZeroBreakpoint,
    MixedComponents,
    RootMismatch,
    UnknownPoint,
)
from schemas import INFINITY, format_rational

if TYPE_CHECKING:
    from path_space import Path

logger = logging.getLogger(__name__)

Distance = Union[Fraction, float]


@dataclass(frozen=True)
class ForestElement:
    breakpoints: Tuple[Fraction, ...]
    values: Tuple[BasePoint, ...]
    labels: Tuple[int, ...]

    @property
    def length(self) -> Fraction:
        return self.breakpoints[-1]

    @property
    def root(self) -> BasePoint:
        return self.values[0]

    @property
    def tip(self) -> BasePoint:
        return self.values[-1]

    def prefix(self, k: int) -> "ForestElement":
        """The initial segment ending at breakpoint index k."""
        if k >= len(self.breakpoints) - 1:
            return self
        return ForestElement(self.breakpoints[: k + 1], self.values[: k + 1], self.labels[:k])

    def notation(self, space: Optional[BaseSpace] = None) -> str:
        fmt = space.format_point if space is not None else str
        parts = []
        for i, (r, x) in enumerate(zip(self.breakpoints, self.values)):
            label = f"/{self.labels[i]}" if i < len(self.labels) else ""
            parts.append(f"{format_rational(r)}:{fmt(x)}{label}")
        return "<" + ", ".join(parts) + ">"


# ---------- construction ----------
def make_element(
    space: BaseSpace,
    breakpoints: Sequence[Fraction],
    values: Sequence[BasePoint],
    labels: Sequence[Optional[int]],
) -> ForestElement:
    """
    Validate and build an element. `labels` has one entry per breakpoint; the last must be
    None, every other one a natural number.
    """
    n = len(breakpoints)
    if n == 0 or n != len(values) or n != len(labels):
        raise MalformedElement("breakpoints, values and labels must be nonempty and of equal length")
    if breakpoints[0] != 0:
        raise MissingZeroBreakpoint()
    if labels[-1] is not None:
        raise LabelOnSupremum()
    for i, lab in enumerate(labels[:-1]):
        if lab is None or isinstance(lab, bool) or not isinstance(lab, int) or lab < 0:
            raise MalformedElement(f"breakpoint {i} needs a natural-number label")
    for x in values:
        if not space.contains(x):
            raise UnknownPoint(x, space.kind)
    for i in range(n - 1):
        gap = breakpoints[i + 1] - breakpoints[i]
        if gap <= 0:
            raise MalformedElement(f"breakpoints must increase strictly (index {i})")
        if space.der(values[i], values[i + 1]) > gap:
            raise LipschitzViolation(i)
    return ForestElement(
        tuple(Fraction(r) for r in breakpoints),
        tuple(values),
        tuple(int(lab) for lab in labels[:-1]),
    )


def point_element(x: BasePoint) -> ForestElement:
    return ForestElement((Fraction(0),), (x,), ())


# ---------- order, restriction, meets ----------
def restrict(k: ForestElement, r: Fraction) -> ForestElement:
    return k.prefix(bisect_right(k.breakpoints, r) - 1)


def same_component(a: ForestElement, b: ForestElement) -> bool:
    return a.root == b.root


def _common_prefix_index(a: ForestElement, b: ForestElement) -> int:
    # index of the last breakpoint where both agree in position, value and the label below it
    k = 0
    limit = min(len(a.breakpoints), len(b.breakpoints)) - 1
    while (
        k < limit
        and a.labels[k] == b.labels[k]
        and a.breakpoints[k + 1] == b.breakpoints[k + 1]
        and a.values[k + 1] == b.values[k + 1]
    ):
        k += 1
    return k


def meet(a: ForestElement, b: ForestElement) -> Optional[ForestElement]:
    """Longest common initial segment, or None across components."""
    if not same_component(a, b):
        return None
    return a.prefix(_common_prefix_index(a, b))


def meet_family(ks: Sequence[ForestElement]) -> ForestElement:
    if not ks:
        raise MalformedElement("meet of an empty family")
    if any(not same_component(ks[0], k) for k in ks[1:]):
        raise MixedComponents()
    return reduce(meet, ks[1:], ks[0])


def is_prefix(a: ForestElement, b: ForestElement) -> bool:
    """a is an initial segment of b (a extends to b)."""
    n = len(a.breakpoints)
    return n <= len(b.breakpoints) and b.prefix(n - 1) == a


# ---------- metric ----------
def distance(a: ForestElement, b: ForestElement) -> Distance:
    m = meet(a, b)
    if m is None:
        return INFINITY
    return a.length + b.length - 2 * m.length


def distance_trunc(a: ForestElement, b: ForestElement, s: Fraction) -> Fraction:
    d = distance(a, b)
    return s if d == INFINITY or d > s else d


# ---------- predicates and tips ----------
def eval_predicate(space: BaseSpace, f: FunctionSpec, k: ForestElement) -> Fraction:
    return space.eval_function(f, k.tip)


def tp_base(k: ForestElement) -> BasePoint:
    return k.tip


def max_label(ks: Iterable[ForestElement]) -> int:
    """Largest label in use, -1 if none."""
    return max((lab for k in ks for lab in k.labels), default=-1)


# ---------- grafting ----------
def graft(m: ForestElement, f: "Path", fresh_label: int) -> ForestElement:
    """Continue m along f, branching off with fresh_label."""
    if f.values[0] != m.tip:
        raise RootMismatch(m.tip, f.values[0])
    steps = len(f.breakpoints) - 1
    if steps == 0:
        return m
    return ForestElement(
        m.breakpoints + tuple(m.length + s for s in f.breakpoints[1:]),
        m.values + tuple(f.values[1:]),
        m.labels + (fresh_label,) * steps,
    )
