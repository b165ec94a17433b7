"""
Polynomials over a Field: evaluation, permutation tests and the transform a*P(s*x + b) + c.

Coefficients are stored lowest degree first (coeffs[j] is a_j). Keys and the canonical text
form list them highest degree first, which is also the order representatives are compared in.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import numpy as np

from permpoly.field import Field
from permpoly.types import DegreeOutOfRange, Element, PolyException, PolyKey, ZeroScale


@lru_cache(maxsize=None)
def pascal_mod(n: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    """
    Rows 0..n of Pascal's triangle reduced mod p.
    """
    rows = [(1,)]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append(
            tuple(1 if k in (0, i) else (prev[k - 1] + prev[k]) % p for k in range(i + 1))
        )
    return tuple(rows)


@dataclass(frozen=True)
class Poly:
    field: Field
    coeffs: Tuple[Element, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Element(int(c)) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        q = self.field.q
        if any(not 0 <= c < q for c in coeffs):
            raise PolyException(f"Coefficients {coeffs} are not all elements of {self.field}")
        d = len(coeffs) - 1
        if d < 1 or d > q - 2:
            raise DegreeOutOfRange(f"Degree {d} is outside 1..{q - 2} for {self.field}")
        if coeffs[-1] == 0:
            raise DegreeOutOfRange("Leading coefficient must be nonzero")

    @classmethod
    def from_key(cls, field: Field, key: Iterable[int]) -> "Poly":
        return cls(field, tuple(Element(c) for c in reversed(tuple(key))))

    @classmethod
    def parse(cls, field: Field, text: str) -> "Poly":
        try:
            key = [int(c) for c in text.replace(" ", "").split(",")]
        except ValueError:
            raise PolyException(f'"{text}" is not a comma separated list of element indices')
        return cls.from_key(field, key)

    @classmethod
    def monomial(cls, field: Field, d: int, coeff: int = 1) -> "Poly":
        return cls(field, tuple(Element(0) for _ in range(d)) + (Element(coeff),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def key(self) -> PolyKey:
        return tuple(reversed(self.coeffs))

    def with_coeffs(self, coeffs: Sequence[int]) -> "Poly":
        return Poly(self.field, tuple(Element(int(c)) for c in coeffs))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.key())

    def describe(self) -> str:
        """Human readable form with index coefficients, e.g. x^7+x^5+8x^4+6x^2+4x."""
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
            if c == 1 and j > 0:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms)

    def eval(self, x: int) -> Element:
        f = self.field
        acc = Element(0)
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def values(self) -> np.ndarray:
        """P evaluated on every element 0..q-1."""
        f = self.field
        xs = np.arange(f.q)
        acc = np.full(f.q, self.coeffs[-1])
        for c in reversed(self.coeffs[:-1]):
            acc = f.vadd(f.vmul(acc, xs), c)
        return acc


def is_perm_vector(values: np.ndarray) -> bool:
    return bool(np.all(np.bincount(values, minlength=len(values)) == 1))


def is_permutation(P: Poly) -> bool:
    return is_perm_vector(P.values())


def is_complete(P: Poly) -> bool:
    """
    True if both P(x) and P(x) + x permute the field.
    """
    values = P.values()
    if not is_perm_vector(values):
        return False
    return is_perm_vector(P.field.vadd(values, np.arange(P.field.q)))


def shift(P: Poly, b: int) -> Poly:
    """
    Coefficients of P(x + b).
    """
    if b == 0:
        return P
    f = P.field
    d = P.degree
    binom = pascal_mod(d, f.p)
    out = []
    for j in range(d + 1):
        acc = Element(0)
        for i in range(j, d + 1):
            if P.coeffs[i] == 0 or binom[i][j] == 0:
                continue
            term = f.mul(f.mul(P.coeffs[i], f.from_int(binom[i][j])), f.pow(b, i - j))
            acc = f.add(acc, term)
        out.append(acc)
    return P.with_coeffs(out)


def scale(P: Poly, s: int) -> Poly:
    """
    Coefficients of P(s*x).
    """
    if s == 0:
        raise ZeroScale("Argument scale must be nonzero")
    f = P.field
    return P.with_coeffs([f.mul(c, f.pow(s, j)) for j, c in enumerate(P.coeffs)])


def transform(P: Poly, a: int, s: int, b: int, c: int) -> Poly:
    """
    Coefficients of a*P(s*x + b) + c.
    """
    if a == 0 or s == 0:
        raise ZeroScale(f"transform needs nonzero a and s, got a={a}, s={s}")
    f = P.field
    inner = shift(scale(P, s), f.div(b, s))
    out = [f.mul(a, coeff) for coeff in inner.coeffs]
    out[0] = f.add(out[0], c)
    return P.with_coeffs(out)


def agreements(P: Poly, Q: Poly) -> int:
    if P.field is not Q.field:
        raise PolyException("Polynomials are over different fields")
    return int(np.count_nonzero(P.values() == Q.values()))


def power_columns(field: Field, max_exp: int) -> np.ndarray:
    """
    powers[e, x] is the index of x^e, for e in 0..max_exp and every element x.
    """
    xs = np.arange(field.q)
    exps = np.arange(max_exp + 1)[:, None]
    powers = np.where(xs == 0, 0, ((xs - 1) * exps) % (field.q - 1) + 1)
    powers[0, :] = 1
    return powers


def shift_family(field: Field, rows: np.ndarray) -> np.ndarray:
    """
    For every coefficient row (lowest degree first) and every b, the coefficients of
    P(x + b) - P(b). Returns an array of shape (len(rows), q, d + 1).
    """
    rows = np.asarray(rows)
    n, width = rows.shape
    d = width - 1
    binom = pascal_mod(d, field.p)
    bpow = power_columns(field, d)

    out = np.zeros((n, field.q, width), dtype=np.int64)
    for j in range(1, d + 1):
        acc = np.zeros((n, field.q), dtype=np.int64)
        for i in range(j, d + 1):
            if binom[i][j] == 0:
                continue
            coef = field.vmul(rows[:, i], field.from_int(binom[i][j]))
            acc = field.vadd(acc, field.vmul(coef[:, None], bpow[i - j][None, :]))
        out[:, :, j] = acc
    return out
