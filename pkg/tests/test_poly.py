import itertools

import numpy as np
import pytest

from permpoly.normalize import lucas_binom
from permpoly.poly import (
    Poly,
    agreements,
    is_complete,
    is_permutation,
    pascal_mod,
    scale,
    shift,
    shift_family,
    transform,
)
from permpoly.types import DegreeOutOfRange, PolyException, ZeroScale


def test_text_forms(gf):
    f = gf(25)
    P = Poly.parse(f, "1,0,2,0,12,0,4,0,17,0")
    assert P.degree == 9
    assert str(P) == "1,0,2,0,12,0,4,0,17,0"
    assert P.describe() == "x^9+2x^7+12x^5+4x^3+17x"
    assert P.key() == (1, 0, 2, 0, 12, 0, 4, 0, 17, 0)

    with pytest.raises(PolyException):
        Poly.parse(f, "1,a,0")


def test_invariants(gf):
    f = gf(11)
    with pytest.raises(DegreeOutOfRange):
        Poly.monomial(f, 10)
    with pytest.raises(DegreeOutOfRange):
        Poly.from_key(f, (0, 1, 0))
    with pytest.raises(DegreeOutOfRange):
        Poly.from_key(f, (3,))
    with pytest.raises(PolyException):
        Poly.from_key(f, (1, 11))


def test_eval_matches_values(gf):
    f = gf(27)
    P = Poly.parse(f, "1,0,5,0,9,0,13,4")
    assert [P.eval(x) for x in range(27)] == P.values().tolist()


def test_permutation_monomials(gf):
    f = gf(11)
    assert is_permutation(Poly.monomial(f, 7))
    assert is_permutation(Poly.monomial(f, 3))
    assert not is_permutation(Poly.monomial(f, 2))
    assert not is_permutation(Poly.monomial(f, 5))


def test_agreements(gf):
    f = gf(11)
    P = Poly.monomial(f, 7)
    Q = Poly.parse(f, "1,0,0,0,0,0,1,0")
    assert agreements(P, Q) == 1
    assert agreements(P, P) == 11


def test_low_degree_agreement_bound(gf):
    f = gf(7)
    polys = [Poly.from_key(f, (1,) + rest) for rest in itertools.product(range(7), repeat=2)]
    for P, Q in itertools.combinations(polys, 2):
        assert agreements(P, Q) <= 2


def test_is_complete(gf):
    assert is_complete(Poly.monomial(gf(7), 1))
    # x + x = 0 in characteristic 2
    assert not is_complete(Poly.monomial(gf(16), 1))
    assert not is_complete(Poly.monomial(gf(7), 2))


def test_shift_characteristic_two(gf):
    f = gf(16)
    for b in range(16):
        assert shift(Poly.monomial(f, 8), b).coeffs == (f.pow(b, 8),) + (0,) * 7 + (1,)

        expected = [0] * 13
        expected[12] = 1
        expected[8], expected[4], expected[0] = f.pow(b, 4), f.pow(b, 8), f.pow(b, 12)
        assert shift(Poly.monomial(f, 12), b).coeffs == tuple(expected)


def test_shift_inverse(gf):
    f = gf(25)
    P = Poly.parse(f, "1,0,2,0,12,0,4,0,17,0")
    for b in range(25):
        assert shift(shift(P, b), f.neg(b)) == P


def test_transform_preserves_permutation(gf):
    f = gf(13)
    P = Poly.monomial(f, 5)
    assert is_permutation(P)
    for a, s, b, c in [(1, 1, 0, 0), (3, 5, 2, 7), (12, 2, 0, 9), (7, 11, 12, 1)]:
        assert is_permutation(transform(P, a, s, b, c))


def test_transform_matches_values(gf):
    f = gf(9)
    P = Poly.parse(f, "1,0,4,3,0")
    a, s, b, c = 3, 5, 2, 7
    T = transform(P, a, s, b, c)
    xs = range(9)
    expected = [f.add(f.mul(a, P.eval(f.add(f.mul(s, x), b))), c) for x in xs]
    assert [T.eval(x) for x in xs] == expected


def test_transform_composition(gf):
    f = gf(11)
    P = Poly.parse(f, "1,0,3,0,5")
    first = transform(transform(P, 2, 3, 4, 5), 6, 7, 8, 9)
    T = transform(P, 2, 3, 4, 5)
    for x in range(11):
        inner = f.add(f.mul(7, x), 8)
        assert first.eval(x) == f.add(f.mul(6, T.eval(inner)), 9)


def test_zero_scale(gf):
    f = gf(7)
    P = Poly.monomial(f, 3)
    with pytest.raises(ZeroScale):
        transform(P, 0, 1, 0, 0)
    with pytest.raises(ZeroScale):
        transform(P, 1, 0, 0, 0)
    with pytest.raises(ZeroScale):
        scale(P, 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_pascal_is_lucas(p):
    rows = pascal_mod(30, p)
    for n in range(31):
        for k in range(n + 1):
            assert rows[n][k] == lucas_binom(n, k, p)


def test_shift_family(gf):
    f = gf(27)
    P = Poly.parse(f, "1,0,5,0,9,0,13,0")
    family = shift_family(f, np.array([P.coeffs]))
    assert family.shape == (1, 27, 8)
    for b in range(27):
        shifted = shift(P, b)
        assert family[0, b, 0] == 0
        assert tuple(family[0, b, 1:]) == shifted.coeffs[1:]
