from __future__ import annotations
from fractions import Fraction as F

import pytest

from base_space import IntervalSpace, TailCompactification, validate_space
from forest import ForestElement, make_element

X3_JSON = {
    "kind": "finite_discrete",
    "points": ["a", "b", "c"],
    "metric": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]],
}
INTERVAL10_JSON = {"kind": "interval", "diameter": "10"}
TAIL_JSON = {"kind": "tail_compactification"}

A, B, C = 0, 1, 2  # point indices of X3


def elem(x3, *steps) -> ForestElement:
    """elem(x3, (0, "a", 0), (1, "b")) builds <0:a/0, 1:b> over X3."""
    return make_element(
        x3,
        [F(s[0]) for s in steps],
        [x3.parse_point(s[1]) for s in steps],
        [s[2] if len(s) > 2 else None for s in steps],
    )


@pytest.fixture(scope="session")
def x3():
    return validate_space(X3_JSON)


@pytest.fixture(scope="session")
def interval10() -> IntervalSpace:
    return validate_space(INTERVAL10_JSON)


@pytest.fixture(scope="session")
def tail() -> TailCompactification:
    return validate_space(TAIL_JSON)


@pytest.fixture(scope="session")
def spaces(x3, interval10, tail):
    return {"x3": x3, "interval10": interval10, "tail": tail}


@pytest.fixture(scope="session")
def k(x3):
    """The X3 fixtures pt_a, K1, K2, K3, K5, K6, L_b."""
    return {
        "pt_a": elem(x3, (0, "a")),
        "K1": elem(x3, (0, "a", 0), (1, "b")),
        "K2": elem(x3, (0, "a", 0), (1, "b", 0), (2, "c")),
        "K3": elem(x3, (0, "a", 1), (1, "b")),
        "K5": elem(x3, (0, "a", 0), (1, "b", 1), (2, "c")),
        "K6": elem(x3, (0, "a", 2), (1, "b")),
        "L_b": elem(x3, (0, "b")),
    }
