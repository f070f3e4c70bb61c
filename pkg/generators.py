"""
Seeded random-instance generators.

Every case gets its own Generator derived from (seed, case) through a numpy SeedSequence
spawn key, so any single case can be replayed without running the ones before it.
Elements of one component are grown by cutting an earlier element at a breakpoint and
continuing it along a fresh random path; labels come from a small alphabet so that
shared prefixes and label clashes both occur often.
"""
from __future__ import annotations
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
from numpy.random import Generator, SeedSequence

from base_space import BasePoint, BaseSpace, random_rational
from errors import RForestError
from forest import ForestElement, distance
from models import Bounds
from path_space import Path
from tree_geometry import FiniteTree, make_finite_tree
from type_space import DeskModel, InfiniteType, PathType, TypePoint, make_desk_model, realized

LABEL_ALPHABET = 3
KINDS = ("element", "path", "interval-config", "tree", "type-pair")


def case_rng(seed: int, case: int) -> Generator:
    return np.random.default_rng(SeedSequence(seed, spawn_key=(case,)))


def choice(rng: Generator, items: Sequence[Any]) -> Any:
    return items[int(rng.integers(len(items)))]


# ---------- paths and elements ----------
def random_path(space: BaseSpace, rng: Generator, bounds: Bounds,
                start: Optional[BasePoint] = None, max_breakpoints: Optional[int] = None) -> Path:
    cap = bounds.max_breakpoints if max_breakpoints is None else max_breakpoints
    n = int(rng.integers(1, max(cap, 1) + 1))
    x = space.sample_point(rng, bounds.max_denominator) if start is None else start
    rs, xs = [Fraction(0)], [x]
    for _ in range(n - 1):
        gap = random_rational(rng, Fraction(0), space.diameter, bounds.max_denominator, lo_closed=False)
        x = space.sample_near(x, gap, rng, bounds.max_denominator)
        rs.append(rs[-1] + gap)
        xs.append(x)
    return Path(tuple(rs), tuple(xs))


def _labels(rng: Generator, n: int) -> Tuple[int, ...]:
    return tuple(int(v) for v in rng.integers(0, LABEL_ALPHABET, size=n))


def extend(stem: ForestElement, f: Path, labels: Sequence[int]) -> ForestElement:
    """Continue stem along f, labelling the new segments with `labels`."""
    if len(f.breakpoints) == 1:
        return stem
    return ForestElement(
        stem.breakpoints + tuple(stem.length + s for s in f.breakpoints[1:]),
        stem.values + f.values[1:],
        stem.labels + tuple(labels),
    )


def random_element(space: BaseSpace, rng: Generator, bounds: Bounds,
                   root: Optional[BasePoint] = None) -> ForestElement:
    f = random_path(space, rng, bounds, start=root)
    return ForestElement(f.breakpoints, f.values, _labels(rng, len(f.breakpoints) - 1))


def random_branch(space: BaseSpace, rng: Generator, bounds: Bounds, base: ForestElement) -> ForestElement:
    """Cut base at a random breakpoint and grow a new continuation."""
    k = int(rng.integers(len(base.breakpoints)))
    stem = base.prefix(k)
    room = bounds.max_breakpoints - k
    f = random_path(space, rng, bounds, start=stem.tip, max_breakpoints=max(room, 1))
    return extend(stem, f, _labels(rng, len(f.breakpoints) - 1))


def random_component(space: BaseSpace, rng: Generator, bounds: Bounds, size: int,
                     root: Optional[BasePoint] = None) -> List[ForestElement]:
    out = [random_element(space, rng, bounds, root=root)]
    while len(out) < size:
        out.append(random_branch(space, rng, bounds, choice(rng, out)))
    return out


def random_family(space: BaseSpace, rng: Generator, bounds: Bounds) -> List[ForestElement]:
    return random_component(space, rng, bounds, int(rng.integers(1, bounds.max_family + 1)))


def other_root(space: BaseSpace, rng: Generator, bounds: Bounds, avoid: BasePoint) -> BasePoint:
    for _ in range(64):
        x = space.sample_point(rng, bounds.max_denominator)
        if x != avoid:
            return x
    raise RForestError("could not sample a second component root")


# ---------- composite instances ----------
def random_interval_config(space: BaseSpace, rng: Generator, bounds: Bounds
                           ) -> Tuple[ForestElement, ForestElement, Fraction, ForestElement]:
    """(K, K', r, A) with d(K, K') < r; A occasionally in another component."""
    k, k2, a = random_component(space, rng, bounds, 3)
    if int(rng.integers(8)) == 0:
        a = random_element(space, rng, bounds, root=other_root(space, rng, bounds, k.root))
    slack = random_rational(rng, Fraction(0), Fraction(2), bounds.max_denominator, lo_closed=False)
    return k, k2, distance(k, k2) + slack, a


def random_tree(space: BaseSpace, rng: Generator, bounds: Bounds,
                root: Optional[BasePoint] = None) -> FiniteTree:
    pool = random_component(space, rng, bounds, bounds.max_intervals + 1, root=root)
    count = int(rng.integers(1, bounds.max_intervals + 1))
    pairs = [(pool[0], choice(rng, pool))]
    tree = make_finite_tree(pairs)
    for _ in range(count - 1):
        elements = list(tree.elements)
        pairs.append((choice(rng, elements), choice(rng, pool)))
        tree = make_finite_tree(pairs)
    return tree


def random_desk_model(space: BaseSpace, rng: Generator, bounds: Bounds) -> DeskModel:
    first = random_tree(space, rng, bounds)
    trees = [first]
    if int(rng.integers(2)):
        trees.append(random_tree(space, rng, bounds, root=other_root(space, rng, bounds, first.root)))
    return make_desk_model(trees)


def random_type(space: BaseSpace, rng: Generator, bounds: Bounds, model: DeskModel,
                near: Optional[TypePoint] = None) -> TypePoint:
    roll = int(rng.integers(10))
    if roll == 0:
        return InfiniteType(space.sample_point(rng, bounds.max_denominator))
    if isinstance(near, PathType) and roll < 5:
        # same m, sharing a prefix of near.f
        k = int(rng.integers(len(near.f.breakpoints)))
        stem = near.f.prefix(k)
        tail = random_path(space, rng, bounds, start=stem.tip,
                           max_breakpoints=max(bounds.max_breakpoints - k, 1))
        return PathType(near.m, Path(stem.breakpoints + tuple(stem.length + s for s in tail.breakpoints[1:]),
                                     stem.values + tail.values[1:]))
    m = choice(rng, model.elements)
    if roll == 1:
        return realized(m)
    return PathType(m, random_path(space, rng, bounds, start=m.tip))


def random_type_pair(space: BaseSpace, rng: Generator, bounds: Bounds
                     ) -> Tuple[DeskModel, TypePoint, TypePoint, TypePoint]:
    """A desk model and three types over it (triples feed the triangle inequality)."""
    model = random_desk_model(space, rng, bounds)
    t1 = random_type(space, rng, bounds, model)
    t2 = random_type(space, rng, bounds, model, near=t1)
    t3 = random_type(space, rng, bounds, model, near=t1)
    return model, t1, t2, t3


def generate(kind: str, space: BaseSpace, rng: Generator, bounds: Bounds = Bounds()) -> Any:
    if kind == "element":
        return random_element(space, rng, bounds)
    if kind == "path":
        return random_path(space, rng, bounds)
    if kind == "interval-config":
        return random_interval_config(space, rng, bounds)
    if kind == "tree":
        return random_tree(space, rng, bounds)
    if kind == "type-pair":
        return random_type_pair(space, rng, bounds)
    raise RForestError(f"unknown instance kind {kind!r}; known: {', '.join(KINDS)}")


__all__ = [
    "KINDS", "case_rng", "choice", "extend", "generate", "random_branch", "random_component",
    "random_desk_model", "random_element", "random_family", "random_interval_config", "random_path",
    "random_tree", "random_type", "random_type_pair",
]
