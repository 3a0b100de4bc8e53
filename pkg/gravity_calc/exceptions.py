"""
Error types for the gravity calculator.

Every error is a ValueError so callers that only care about bad input can
catch the standard exception.
"""
from typing import Any, Optional


class GravityCalcError(ValueError):
    """Base class for all domain errors."""


class NonDisjoint(GravityCalcError):
    """Two cubes of a configuration have intersecting open images."""

    def __init__(self, i: int, k: int):
        self.i = i
        self.k = k
        super().__init__(f"cubes {i} and {k} have intersecting open images")


class OutOfBounds(GravityCalcError):
    """A cube leaves [-1, 1] along some axis."""

    def __init__(self, i: int, axis: int):
        self.i = i
        self.axis = axis
        super().__init__(f"cube {i} leaves [-1, 1] on axis {axis}")


class EmptySubset(GravityCalcError):
    def __init__(self):
        super().__init__("subset of cube labels must be nonempty")


class BadS(GravityCalcError):
    def __init__(self, s: int, j: int):
        self.s = s
        self.j = j
        super().__init__(f"s={s} is outside 1..{j}")


class OutOfRange(GravityCalcError):
    def __init__(self, value: Any):
        self.value = value
        super().__init__(f"{value} is outside [0, 1]")


class Unreachable(GravityCalcError):
    """Shrinking the first-axis radii never separates the cubes into s groups."""

    def __init__(self, s: int, distinct_centers: int):
        self.s = s
        self.distinct_centers = distinct_centers
        super().__init__(
            f"cannot separate into {s} groups: only {distinct_centers} distinct first-axis centers"
        )


class NegativeDegree(GravityCalcError):
    def __init__(self, name: str, degree: int):
        self.name = name
        self.degree = degree
        super().__init__(f"element {name} would land in degree {degree}")


class PrimeMismatch(GravityCalcError):
    def __init__(self, p: int, q: int):
        super().__init__(f"cannot combine spaces over F_{p} and F_{q}")


class TruncationTooSmall(GravityCalcError):
    def __init__(self, max_weight: int, max_degree: int):
        super().__init__(
            f"truncation box too small: max_weight={max_weight}, max_degree={max_degree}"
        )


class DegreeMismatch(GravityCalcError):
    def __init__(self, element: str, term: Any):
        self.element = element
        self.witness = term
        super().__init__(f"coproduct of {element} has a term {term} of the wrong degree")


class NotCoassociative(GravityCalcError):
    def __init__(self, element: str, witness: Any):
        self.element = element
        self.witness = witness
        super().__init__(f"coproduct is not coassociative on {element}: {witness}")


class BadCounit(GravityCalcError):
    def __init__(self, witness: Any):
        self.witness = witness
        super().__init__(f"counit axiom fails: {witness}")


class BadComodule(GravityCalcError):
    def __init__(self, element: str, witness: Any):
        self.element = element
        self.witness = witness
        super().__init__(f"coaction is not coassociative on {element}: {witness}")


class Truncated(GravityCalcError):
    """A differential term left the computation box."""

    def __init__(self, word: Any):
        self.word = word
        super().__init__(f"differential of {word} leaves the box")


class ParseError(GravityCalcError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class GiveUp(GravityCalcError):
    def __init__(self, j: int, retries: int):
        self.j = j
        self.retries = retries
        super().__init__(f"no disjoint configuration of {j} cubes after {retries} attempts")
