"""
Intervals [K, K'], nearest-point projections, finite trees and convex closures.

Every closed-form answer here has an exhaustive counterpart (`nearest_elements`,
`project_interval_exhaustive`) so the two can be compared element by element.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from errors import (
    BadTruncation,
    DifferentComponents,
    DisconnectedInterval,
    MixedComponents,
    NonUniqueProjection,
    NotAnEndpoint,
    RForestError,
)
from forest import ForestElement, distance, distance_trunc, graft, is_prefix, max_label, meet, same_component
from path_space import Path, PointedFiniteMetric, pointed_metric
from schemas import INFINITY

logger = logging.getLogger(__name__)


# ---------- intervals ----------
@dataclass(frozen=True)
class Interval:
    k: ForestElement
    k2: ForestElement
    m: ForestElement
    elements: Tuple[ForestElement, ...]  # arc order, from k to k2
    positions: Tuple[Fraction, ...]      # d(k, element)

    @property
    def length(self) -> Fraction:
        return self.positions[-1]

    def __contains__(self, a: ForestElement) -> bool:
        return a in self.elements


def interval(k: ForestElement, k2: ForestElement) -> Interval:
    m = meet(k, k2)
    if m is None:
        raise DifferentComponents()
    base = len(m.breakpoints) - 1
    down = [k.prefix(i) for i in range(len(k.breakpoints) - 1, base - 1, -1)]
    up = [k2.prefix(i) for i in range(base + 1, len(k2.breakpoints))]
    elements = tuple(down + up)
    positions = tuple(k.length + e.length - 2 * m.length if is_prefix(e, k2) else k.length - e.length
                      for e in elements)
    return Interval(k, k2, m, elements, positions)


def interval_as_path(iv: Interval, basepoint: ForestElement) -> Path:
    if basepoint == iv.k:
        return Path(iv.positions, tuple(e.tip for e in iv.elements))
    if basepoint == iv.k2:
        total = iv.length
        return Path(tuple(total - p for p in reversed(iv.positions)),
                    tuple(e.tip for e in reversed(iv.elements)))
    raise NotAnEndpoint()


def interval_pointed_metric(iv: Interval, basepoint: ForestElement) -> PointedFiniteMetric:
    if basepoint not in (iv.k, iv.k2):
        raise NotAnEndpoint()
    return pointed_metric(iv.elements, iv.elements.index(basepoint))


def intervals_isomorphic(iv: Interval, base: ForestElement, jv: Interval, base2: ForestElement) -> bool:
    """Same element of P(X) once read from the given basepoints."""
    return interval_as_path(iv, base) == interval_as_path(jv, base2)


def independent_extensions(b: ForestElement, f: Path, count: int) -> List[ForestElement]:
    """
    `count` elements c_i with [b, c_i] isomorphic to f and [b, c_i] n [b, c_j] = {b}.

    Each c_i continues b along f under its own fresh label, so the branches part at b.
    """
    if count < 1:
        raise RForestError(f"count must be positive, got {count}")
    start = max_label([b]) + 1
    return [graft(b, f, start + i) for i in range(count)]


def delta_predicate(k: ForestElement, k2: ForestElement, r: Fraction, a: ForestElement) -> Fraction:
    """min(d_2r(a,K) + d_2r(a,K') - d_r(K,K'), r), evaluated as written."""
    d = distance(k, k2)
    if d > r:
        raise BadTruncation(d, r)
    value = distance_trunc(a, k, 2 * r) + distance_trunc(a, k2, 2 * r) - distance_trunc(k, k2, r)
    return min(value, r)


# ---------- projections ----------
def nearest_elements(a: ForestElement, elements: Iterable[ForestElement]) -> Tuple[List[ForestElement], object]:
    """All argmins of d(a, .) over elements, with the minimum."""
    best: List[ForestElement] = []
    best_d: object = INFINITY
    for e in elements:
        d = distance(a, e)
        if d < best_d:
            best, best_d = [e], d
        elif d == best_d and d != INFINITY and e not in best:
            best.append(e)
    return best, best_d


def _unique(a: ForestElement, elements: Iterable[ForestElement]) -> Tuple[ForestElement, Fraction]:
    best, d = nearest_elements(a, elements)
    if not best:
        raise DifferentComponents()
    if len(best) > 1:
        raise NonUniqueProjection(f"{len(best)} elements at distance {d}")
    return best[0], d


def project_interval(a: ForestElement, iv: Interval) -> Optional[ForestElement]:
    if not same_component(a, iv.k):
        return None
    candidates = [iv.m]
    for b in (meet(a, iv.k), meet(a, iv.k2)):
        if is_prefix(iv.m, b):
            candidates.append(b)
    return max(candidates, key=lambda c: c.length)


def dist_to_interval(a: ForestElement, iv: Interval):
    p = project_interval(a, iv)
    return INFINITY if p is None else distance(a, p)


def project_interval_exhaustive(a: ForestElement, iv: Interval) -> Tuple[ForestElement, Fraction]:
    return _unique(a, iv.elements)


# ---------- finite trees ----------
@dataclass(frozen=True)
class FiniteTree:
    intervals: Tuple[Interval, ...]
    elements: Tuple[ForestElement, ...]

    @property
    def root(self):
        return self.elements[0].root

    def __contains__(self, a: ForestElement) -> bool:
        return a in self.elements


def make_finite_tree(pairs: Sequence[Tuple[ForestElement, ForestElement]]) -> FiniteTree:
    if not pairs:
        raise DisconnectedInterval(0)
    root = pairs[0][0].root
    if any(k.root != root or l.root != root for k, l in pairs):
        raise DifferentComponents()
    seen: Dict[ForestElement, None] = {}
    intervals = []
    for i, (k, l) in enumerate(pairs):
        iv = interval(k, l)
        if i > 0 and not any(e in seen for e in iv.elements):
            raise DisconnectedInterval(i)
        intervals.append(iv)
        seen.update(dict.fromkeys(iv.elements))
    return FiniteTree(tuple(intervals), tuple(seen))


def project_tree(a: ForestElement, tree: FiniteTree) -> Tuple[ForestElement, Fraction]:
    if not same_component(a, tree.elements[0]):
        raise DifferentComponents()
    return _unique(a, tree.elements)


def project_tree_by_intervals(a: ForestElement, tree: FiniteTree) -> Tuple[ForestElement, Fraction]:
    """Minimum over the closed-form projections onto each generating interval."""
    if not same_component(a, tree.elements[0]):
        raise DifferentComponents()
    projections = [project_interval(a, iv) for iv in tree.intervals]
    return _unique(a, projections)


def ccl(elements: Sequence[ForestElement]) -> FiniteTree:
    if not elements:
        raise MixedComponents()
    if any(not same_component(elements[0], e) for e in elements[1:]):
        raise MixedComponents()
    if len(elements) == 1:
        return make_finite_tree([(elements[0], elements[0])])
    return make_finite_tree(list(zip(elements, elements[1:])))


def interval_union_contains(e: ForestElement, f: ForestElement, g: ForestElement) -> bool:
    """[e, g] is inside [e, f] u [f, g]."""
    cover = set(interval(e, f).elements) | set(interval(f, g).elements)
    return all(x in cover for x in interval(e, g).elements)


# ---------- big distance ----------
@dataclass(frozen=True)
class BigDistance:
    c_proj: ForestElement
    e_proj: ForestElement
    degenerate: bool
    total: Fraction
    terms: Tuple[Fraction, ...] = ()

    @property
    def holds(self) -> bool:
        return self.degenerate or sum(self.terms) == self.total


def big_distance_decompose(a: ForestElement, b: ForestElement, c: ForestElement,
                           e: ForestElement) -> BigDistance:
    if any(not same_component(a, x) for x in (b, c, e)):
        raise MixedComponents()
    iv = interval(a, b)
    c2, e2 = project_interval(c, iv), project_interval(e, iv)
    total = distance(c, e)
    if c2 == e2:
        return BigDistance(c2, e2, True, total)
    return BigDistance(c2, e2, False, total, (distance(c, c2), distance(c2, e2), distance(e2, e)))
