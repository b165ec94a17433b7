from dataclasses import dataclass
from typing import NewType, Tuple

# A bunch of commonly used type definitions.

# A field element in generator-index notation: 0 is the field zero, i >= 1 is t^(i-1).
Element = NewType("Element", int)

# Coefficient indices of a polynomial, highest degree first. This is the dedup key used
# everywhere a set of polynomials is kept, and its tuple order is the representative order.
PolyKey = Tuple[int, ...]


@dataclass(frozen=True)
class FieldSpec:
    """
    Parameters of GF(p^m). prim_poly is monic, listed from degree m down to degree 0.
    """

    p: int
    m: int
    prim_poly: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.m

    def prim_poly_text(self) -> str:
        return ",".join(str(c) for c in self.prim_poly)


# Incorrect arguments or other usage error.
class PermpolyUsageException(Exception):
    pass


# Base for everything raised while constructing or using a field.
class FieldException(Exception):
    pass


# The characteristic given for a field is not a prime.
class NonPrimeP(FieldException):
    def __init__(self, p: int):
        super().__init__(f"{p} is not a prime")
        self.p = p


# The field polynomial doesn't have degree m or its leading coefficient isn't 1.
class NonMonic(FieldException):
    pass


# Powers of the root collide before exponent q-1, so it doesn't generate the field.
class NonPrimitivePoly(FieldException):
    def __init__(self, spec: FieldSpec, order: int):
        super().__init__(
            f"Polynomial {spec.prim_poly_text()} over GF({spec.p}) is not primitive for"
            f" GF({spec.q}): its root has order {order}, expected {spec.q - 1}"
        )
        self.spec = spec
        self.order = order


class DivisionByZero(FieldException, ZeroDivisionError):
    pass


# Base for polynomial construction and normalization errors.
class PolyException(Exception):
    pass


# transform() was asked to multiply the polynomial or its argument by zero.
class ZeroScale(PolyException):
    pass


# Degree outside of 1 <= d <= q-2, or a polynomial with a zero leading coefficient.
class DegreeOutOfRange(PolyException):
    pass


# A normalization was requested that doesn't match the (p, d) regime.
class RegimeMismatch(PolyException):
    pass


# b-normalization does not exist for d = 2^i - 2.
class BException(PolyException):
    pass


# Base for errors coming out of the search and the oracle.
class SearchException(Exception):
    pass


# A mask has no nonzero coefficient that can be pinned to orbit representatives.
class NoFreePosition(SearchException):
    pass


# A class computed from a set of nPPs has members outside the set.
class NotClosed(SearchException):
    pass


# The brute force oracle would test more candidates than allowed.
class BudgetExceeded(SearchException):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"Need {needed:,} candidates but the budget is {budget:,}")
        self.needed = needed
        self.budget = budget


# A checkpoint file belongs to a different run.
class CheckpointMismatch(SearchException):
    pass


# Base for permutation array and bound errors.
class PermArrayException(Exception):
    pass


# A polynomial was used as a permutation but doesn't permute the field.
class NotAPermutation(PermArrayException):
    pass


class LengthMismatch(PermArrayException):
    pass


# A bound needs N_k(q) for a degree that no counts source provides.
class MissingCount(PermArrayException):
    def __init__(self, q: int, missing: Tuple[int, ...]):
        super().__init__(
            f"No N_k({q}) count for degree(s) {', '.join(str(k) for k in missing)}"
        )
        self.q = q
        self.missing = missing
