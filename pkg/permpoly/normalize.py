from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Optional, Tuple

from permpoly.poly import Poly, shift, transform
from permpoly.types import BException, Element, RegimeMismatch


# How a PP of degree d over a field of characteristic p can be normalized
class RegimeKind(Enum):
    C = "c"  # p does not divide d: monic, a_{d-1} = 0, a_0 = 0
    M = "m"  # p | d, p odd: monic, a_0 = 0, a_{d-1} = 0 or a_{d-2} = 0
    B = "b"  # p = 2 | d below the gap limit: monic, a_0 = 0, a_r = 0 or a_{r-1} = 0
    B_EXCEPTION = "b-exception"  # d = 2^i - 2: only monic and a_0 = 0


@dataclass(frozen=True)
class NormRegime:
    kind: RegimeKind
    d: int

    # Constrained coefficient positions. For C the single position is zero; for M and B the
    # first is zero, or else the second is.
    positions: Tuple[int, ...] = ()

    # For B only: 2^i <= d <= 2^(i+1) - 3 and r = 2^i - 1
    i: Optional[int] = None
    r: Optional[int] = None


def regime(p: int, d: int) -> NormRegime:
    if d < 1:
        raise ValueError(f"Degree must be positive, got {d}")
    if d % p:
        return NormRegime(RegimeKind.C, d, (d - 1,))
    if p > 2:
        return NormRegime(RegimeKind.M, d, (d - 1, d - 2))

    i = d.bit_length() - 1
    if d <= 2 ** (i + 1) - 3:
        r = 2**i - 1
        return NormRegime(RegimeKind.B, d, (r, r - 1), i=i, r=r)
    return NormRegime(RegimeKind.B_EXCEPTION, d)


def lucas_binom(n: int, k: int, p: int) -> int:
    """
    C(n, k) mod p as the product of the binomials of the base-p digits.
    """
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        n, n_digit = divmod(n, p)
        k, k_digit = divmod(k, p)
        if k_digit > n_digit:
            return 0
        result = result * comb(n_digit, k_digit) % p
    return result


def has_gap(d: int, i: int) -> bool:
    """
    Whether (x + b)^d has no x^e terms for e in {2^i - 2, 2^i - 1} in characteristic 2.
    """
    if i <= 1:
        raise ValueError(f"Gap is only defined for i > 1, got {i}")
    return all(d - e < 0 or lucas_binom(d, d - e, 2) == 0 for e in (2**i - 2, 2**i - 1))


def _monic(P: Poly) -> Poly:
    f = P.field
    a = f.inv(P.coeffs[-1])
    return P.with_coeffs([f.mul(a, c) for c in P.coeffs])


def _zero_constant(P: Poly) -> Poly:
    return P.with_coeffs((Element(0),) + P.coeffs[1:])


def c_normalize(P: Poly) -> Tuple[Poly, Element, Element, Element]:
    """
    The unique (a, b, c) with a*P(x + b) + c monic, a_{d-1} = 0 and a_0 = 0, along with the
    normalized polynomial.
    """
    f = P.field
    d = P.degree
    if regime(f.p, d).kind != RegimeKind.C:
        raise RegimeMismatch(f"c-normalization needs p={f.p} not dividing d={d}")

    a_d, a_d1 = P.coeffs[d], P.coeffs[d - 1]
    a = f.inv(a_d)
    b = f.neg(f.div(a_d1, f.mul(f.from_int(d), a_d)))
    shifted = transform(P, a, 1, b, 0)
    c = f.neg(shifted.coeffs[0])
    return _zero_constant(shifted), a, b, c


def m_normalize(P: Poly) -> Poly:
    f = P.field
    d = P.degree
    if regime(f.p, d).kind != RegimeKind.M:
        raise RegimeMismatch(f"m-normalization needs an odd p={f.p} dividing d={d}")

    Q = _monic(P)
    lead1, lead2 = Q.coeffs[d - 1], Q.coeffs[d - 2]
    if lead1 != 0 and lead2 != 0:
        # The x^{d-2} coefficient of Q(x + b) is a_{d-2} - a_{d-1} b
        Q = shift(Q, f.div(lead2, lead1))
    return _zero_constant(Q)


def b_normalize(P: Poly) -> Poly:
    f = P.field
    d = P.degree
    reg = regime(f.p, d)
    if reg.kind == RegimeKind.B_EXCEPTION:
        raise BException(f"No b-normalization exists for d={d} = 2^i - 2")
    if reg.kind != RegimeKind.B:
        raise RegimeMismatch(f"b-normalization needs p=2 dividing d, got p={f.p}, d={d}")

    assert reg.r is not None
    Q = _monic(P)
    top, below = Q.coeffs[reg.r], Q.coeffs[reg.r - 1]
    if top != 0 and below != 0:
        # Terms above x^r don't reach x^r or x^{r-1}, so the x^{r-1} coefficient of
        # Q(x + b) is a_{r-1} + a_r b
        Q = shift(Q, f.div(below, top))
    return _zero_constant(Q)


def normalize(P: Poly) -> Poly:
    """
    Some normalized PP related to P by a*P(x + b) + c, whatever the regime.
    """
    kind = regime(P.field.p, P.degree).kind
    if kind == RegimeKind.C:
        return c_normalize(P)[0]
    if kind == RegimeKind.M:
        return m_normalize(P)
    if kind == RegimeKind.B:
        return b_normalize(P)
    return _zero_constant(_monic(P))


def is_npp(P: Poly) -> bool:
    if P.coeffs[-1] != 1 or P.coeffs[0] != 0:
        return False
    reg = regime(P.field.p, P.degree)
    if reg.kind == RegimeKind.B_EXCEPTION:
        return True
    if reg.kind == RegimeKind.C:
        return P.coeffs[reg.positions[0]] == 0
    first, second = reg.positions
    return P.coeffs[first] == 0 or P.coeffs[second] == 0
