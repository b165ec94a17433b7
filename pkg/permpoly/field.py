"""
GF(p^m) arithmetic in generator-index notation.

Element 0 is the field zero and element i >= 1 is t^(i-1), where t is a root of the
field's primitive polynomial. Multiplication is index arithmetic mod q-1; addition goes
through a precomputed q x q table for small fields and Zech logarithms otherwise.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from sympy import isprime

from permpoly.types import (
    DivisionByZero,
    Element,
    FieldException,
    FieldSpec,
    NonMonic,
    NonPrimeP,
    NonPrimitivePoly,
)

# Fields up to this order get a full addition table
ADD_TABLE_LIMIT = 256

# Largest supported field
MAX_ORDER = 1 << 16


@dataclass(eq=False)
class Field:
    spec: FieldSpec

    # enc[i] is the base-p encoding (sum of c_j p^j) of the polynomial representative of i
    enc: np.ndarray = field(repr=False)

    # Inverse of enc: index_of[enc[i]] == i
    index_of: np.ndarray = field(repr=False)

    # zech[i] is the index of 1 + element i
    zech: np.ndarray = field(repr=False)

    # add_table[i, j] is the index of i + j, when the field is small enough to keep one
    add_table: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def gen(self) -> Element:
        """Index of t itself (t^1)."""
        return self.elem(1)

    @property
    def minus_one(self) -> Element:
        return self.from_int(-1)

    def __str__(self) -> str:
        return f"GF({self.q})"

    def elements(self) -> List[Element]:
        return [Element(i) for i in range(self.q)]

    def elem(self, k: int) -> Element:
        """Index of t^k."""
        return Element(k % (self.q - 1) + 1)

    def log(self, x: int) -> int:
        """Exponent k with t^k == x."""
        if x == 0:
            raise DivisionByZero("0 is not a power of t")
        return x - 1

    def from_int(self, n: int) -> Element:
        """The prime subfield element n * 1."""
        return Element(int(self.index_of[n % self.p]))

    def add(self, x: int, y: int) -> Element:
        if self.add_table is not None:
            return Element(int(self.add_table[x, y]))
        if x == 0:
            return Element(y)
        if y == 0:
            return Element(x)
        # x + y = x * (1 + y/x)
        return self.mul(x, int(self.zech[(y - x) % (self.q - 1) + 1]))

    def neg(self, x: int) -> Element:
        return self.mul(x, self.minus_one)

    def sub(self, x: int, y: int) -> Element:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> Element:
        if x == 0 or y == 0:
            return Element(0)
        return Element((x + y - 2) % (self.q - 1) + 1)

    def inv(self, x: int) -> Element:
        if x == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return Element((1 - x) % (self.q - 1) + 1)

    def div(self, x: int, y: int) -> Element:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, n: int) -> Element:
        if x == 0:
            if n < 0:
                raise DivisionByZero("0 raised to a negative power")
            return Element(1 if n == 0 else 0)
        return Element(((x - 1) * n) % (self.q - 1) + 1)

    def frobenius(self, x: int) -> Element:
        if x == 0:
            return Element(0)
        return Element(((x - 1) * self.p) % (self.q - 1) + 1)

    def element_vector(self, x: int) -> Tuple[int, ...]:
        """Polynomial-basis coefficients of x over GF(p), degree m-1 down to 0."""
        e = int(self.enc[x])
        digits = []
        for _ in range(self.m):
            e, d = divmod(e, self.p)
            digits.append(d)
        return tuple(reversed(digits))

    def vadd(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.add_table is not None:
            return self.add_table[x, y]
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        n = self.q - 1
        r = self.zech[(y - x) % n + 1]
        s = np.where(r == 0, 0, (x + r - 2) % n + 1)
        return np.where(x == 0, y, np.where(y == 0, x, s))

    def vmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.asarray(x), np.asarray(y)
        return np.where((x == 0) | (y == 0), 0, (x + y - 2) % (self.q - 1) + 1)


def _check_spec(spec: FieldSpec) -> None:
    if not isprime(spec.p):
        raise NonPrimeP(spec.p)
    if spec.m < 1:
        raise NonMonic(f"Extension degree must be at least 1, got {spec.m}")
    if len(spec.prim_poly) != spec.m + 1 or spec.prim_poly[0] != 1:
        raise NonMonic(
            f"Polynomial {spec.prim_poly_text()} is not monic of degree {spec.m}"
            " (list coefficients from degree m down to 0)"
        )
    if any(not 0 <= c < spec.p for c in spec.prim_poly):
        raise NonMonic(f"Coefficients of {spec.prim_poly_text()} must lie in [0, {spec.p})")
    if spec.q > MAX_ORDER:
        raise FieldException(f"GF({spec.q}) is larger than the supported GF({MAX_ORDER})")


def build_field(spec: FieldSpec, table_limit: int = ADD_TABLE_LIMIT) -> Field:
    _check_spec(spec)
    p, m, q = spec.p, spec.m, spec.q

    # t^m = -(c_{m-1} t^{m-1} + ... + c_0); reduction[j] is the coefficient of t^j
    reduction = [(-c) % p for c in reversed(spec.prim_poly[1:])]
    weights = p ** np.arange(m, dtype=np.int64)

    enc = np.zeros(q, dtype=np.int64)
    index_of = np.full(q, -1, dtype=np.int64)
    index_of[0] = 0

    vec = [1] + [0] * (m - 1)
    for k in range(q - 1):
        e = sum(c * p**j for j, c in enumerate(vec))
        if e == 0:
            raise NonPrimitivePoly(spec, 0)
        if index_of[e] != -1:
            raise NonPrimitivePoly(spec, k - int(index_of[e]) + 1)
        enc[k + 1] = e
        index_of[e] = k + 1

        top = vec[-1]
        vec = [0] + vec[:-1]
        vec = [(c + top * r) % p for c, r in zip(vec, reduction)]

    if vec != [1] + [0] * (m - 1):
        raise NonPrimitivePoly(spec, q)

    digits = (enc[:, None] // weights) % p
    zech = index_of[((digits + digits[1]) % p) @ weights]

    add_table = None
    if q <= table_limit:
        sums = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        add_table = index_of[sums]
    else:
        logging.debug(f"GF({q}) uses Zech logarithms for addition")

    return Field(spec=spec, enc=enc, index_of=index_of, zech=zech, add_table=add_table)
