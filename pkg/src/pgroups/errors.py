"""Exception types shared across the package.

Validation errors carry the first offending element/triple so failures can be
replayed by hand.
"""

from __future__ import annotations


class PGroupsError(Exception):
    """Base class for all structured errors raised by this package."""


# --- group construction -----------------------------------------------------

class NotClosed(PGroupsError):
    def __init__(self, row: int, col: int, entry: int, order: int):
        self.position = (row, col)
        self.entry = entry
        super().__init__(
            f"table entry {entry} at ({row}, {col}) is not a valid index < {order}"
        )


class NoIdentity(PGroupsError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class NoInverse(PGroupsError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAssociative(PGroupsError):
    def __init__(self, x: int, y: int, z: int):
        self.triple = (x, y, z)
        super().__init__(f"multiplication is not associative at ({x}, {y}, {z})")


class NotHomomorphism(PGroupsError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"image map is not multiplicative at ({x}, {y})")


class InconsistentPresentation(PGroupsError):
    """The collected multiplication table fails group validation."""


class SizeCapExceeded(PGroupsError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(
            f"group order {order} exceeds the cap {cap}; pass a larger max_order to override"
        )


# --- subgroup / structure ----------------------------------------------------

class NotSubgroupMember(PGroupsError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} outside the stated subgroup")


class NotSubgroup(PGroupsError):
    def __init__(self, detail: str):
        super().__init__(f"member set is not a subgroup: {detail}")


class NotNormal(PGroupsError):
    def __init__(self, conjugator: int, element: int):
        self.conjugator = conjugator
        self.element = element
        super().__init__(
            f"subgroup is not normal: conjugating element {element} by {conjugator} escapes"
        )


class NotNilpotent(PGroupsError):
    def __init__(self, detail: str):
        super().__init__(f"central series stalled: {detail}")


class NotPPower(PGroupsError):
    def __init__(self, order: int):
        self.order = order
        super().__init__(f"order {order} is not a prime power")


class CrossCheckFailed(PGroupsError):
    def __init__(self, detail: str):
        super().__init__(f"independent computations disagree: {detail}")


class NotMaximal(PGroupsError):
    def __init__(self, detail: str = ""):
        super().__init__(f"subgroup is not maximal{': ' + detail if detail else ''}")


class NotAbelian(PGroupsError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"not abelian: elements {x} and {y} do not commute")


class LatticeCapExceeded(PGroupsError):
    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"subgroup-lattice enumeration refused at order {order} > cap {cap}")


# --- rings --------------------------------------------------------------------

class NotAbelianAdd(PGroupsError):
    def __init__(self, detail: str):
        super().__init__(f"additive table is not an abelian group: {detail}")


class NotAssociativeMul(PGroupsError):
    def __init__(self, x: int, y: int, z: int):
        self.triple = (x, y, z)
        super().__init__(f"ring multiplication is not associative at ({x}, {y}, {z})")


class NotDistributive(PGroupsError):
    def __init__(self, side: str, x: int, y: int, z: int):
        self.side = side
        self.triple = (x, y, z)
        super().__init__(f"{side} distributivity fails at ({x}, {y}, {z})")


class NotPRing(PGroupsError):
    def __init__(self, order: int):
        self.order = order
        super().__init__(f"additive order {order} is not a p-power")


class NotRadical(PGroupsError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"ring is not radical: element {element} has no circle inverse")


class NotIdeal(PGroupsError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"subgroup is not a two-sided ideal: product of ({x}, {y}) escapes")


# --- derivations ---------------------------------------------------------------

class NotInAutA(PGroupsError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"automorphism moves element {element} outside its module coset")


class NotInvariant(PGroupsError):
    def __init__(self, derivation_index: int, element: int):
        self.derivation_index = derivation_index
        self.element = element
        super().__init__(
            f"derivation #{derivation_index} moves element {element} of B outside B"
        )


# --- fullness / theorem machinery ---------------------------------------------

class HypothesisFailed(PGroupsError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"hypothesis failed: {reason}")


class UnknownCheck(PGroupsError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown check name: {name!r}")


class TheoremViolation(PGroupsError):
    """A lemma failed on an instance satisfying its hypotheses.

    These are first-class findings, not bugs: callers record them in reports
    instead of aborting.
    """

    def __init__(self, message: str, data: dict | None = None):
        self.data = data or {}
        super().__init__(message)


class DecompositionFailed(TheoremViolation):
    pass


class NoSolution(TheoremViolation):
    pass


class NotWellDefined(TheoremViolation):
    pass


class NotCocycle(TheoremViolation):
    pass
