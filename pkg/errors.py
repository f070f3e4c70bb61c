from __future__ import annotations
from typing import Any, Sequence


class RForestError(ValueError):
    """Base class for every input/validation error raised by the library."""


# ---------- base spaces ----------
class NonRationalValue(RForestError):
    def __init__(self, raw: Any):
        super().__init__(f"Not a rational value: {raw!r} (expected 'p/q' or an integer string)")
        self.raw = raw


class MetricAxiomViolation(RForestError):
    def __init__(self, witness: Sequence[str], reason: str):
        super().__init__(f"Metric axiom violated at {tuple(witness)}: {reason}")
        self.witness = tuple(witness)
        self.reason = reason


class SinglePointSpace(RForestError):
    def __init__(self):
        super().__init__("Space must have at least two points (finite positive diameter)")


class SeparationImpossible(RForestError):
    def __init__(self, x: Any, y: Any, s: Any):
        super().__init__(f"Cannot separate {x!r} and {y!r} at scale {s}: der(x,y) <= s")


class EmptyChoice(RForestError):
    def __init__(self, what: str = "intersection"):
        super().__init__(f"Nothing to choose from: {what} is empty")


# ---------- forest elements ----------
class MalformedElement(RForestError):
    pass


class MissingZeroBreakpoint(MalformedElement):
    def __init__(self):
        super().__init__("First breakpoint must be 0")


class LabelOnSupremum(MalformedElement):
    def __init__(self):
        super().__init__("Last breakpoint must not carry a label")


class LipschitzViolation(MalformedElement):
    def __init__(self, index: int):
        super().__init__(f"1-Lipschitz condition fails between breakpoints {index} and {index + 1}")
        self.index = index


class RootMismatch(RForestError):
    def __init__(self, expected: Any, got: Any):
        super().__init__(f"Path starts at {got!r} but must start at {expected!r}")


class MixedComponents(RForestError):
    def __init__(self):
        super().__init__("Elements are not all in the same finite-distance component")


class DifferentComponents(RForestError):
    def __init__(self):
        super().__init__("Elements lie in different finite-distance components")


# ---------- tree geometry ----------
class BadTruncation(RForestError):
    def __init__(self, distance: Any, r: Any):
        super().__init__(f"Truncation r={r} is below d(K,K')={distance}")


class DisconnectedInterval(RForestError):
    def __init__(self, index: int):
        super().__init__(f"Interval {index} is disjoint from the union of the previous intervals")
        self.index = index


class NotAnEndpoint(RForestError):
    def __init__(self):
        super().__init__("Basepoint must be an endpoint of the interval")


class NonUniqueProjection(RuntimeError):
    """Nearest point is not unique; a broken invariant rather than bad input."""


# ---------- paths / types / harness ----------
class PointOutsideO(RForestError):
    def __init__(self, x: Any):
        super().__init__(f"Point {x!r} is outside the neighbourhood O")
        self.x = x


class DuplicateComponentRoot(RForestError):
    def __init__(self, root: Any):
        super().__init__(f"Two trees share the component root {root!r}")


class InvalidType(RForestError):
    pass


class UnknownSuite(RForestError):
    def __init__(self, name: str, known: Sequence[str]):
        super().__init__(f"Unknown suite {name!r}. Known: {', '.join(known)}")


class MalformedSpace(RForestError):
    pass


class UnknownPoint(RForestError):
    def __init__(self, raw: Any, kind: str):
        super().__init__(f"{raw!r} is not a point of the {kind} space")
        self.raw = raw


class FunctionNotLipschitz(RForestError):
    def __init__(self, where: str):
        super().__init__(f"Function spec violates its Lipschitz constant at {where}")


class InvalidBounds(RForestError):
    pass
