"""
F-map and G-map on polynomials, their cycles, and equivalence-class closure.

F multiplies the degree d-k coefficient by t^k (equivalently t^d P(x/t)) and G raises every
coefficient to the p-th power. Both send PPs to PPs and normalized PPs to normalized PPs.
"""
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd
from typing import Any, Dict, FrozenSet, Iterable, List, Set, Tuple

import numpy as np

from permpoly.field import Field
from permpoly.poly import Poly, shift_family
from permpoly.types import PolyKey


class UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}

    def find(self, x: int) -> int:
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self) -> List[List[int]]:
        out: Dict[int, List[int]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted(sorted(g) for g in out.values())


@lru_cache(maxsize=None)
def coefficient_orbit_reps(f: Field, k: int) -> Tuple[int, ...]:
    """
    Smallest element of each orbit of the nonzero elements under x -> t^k x and x -> x^p.
    Every F/G orbit of a polynomial with a nonzero degree d-k coefficient has a member whose
    degree d-k coefficient is one of these.
    """
    nonzero = range(1, f.q)
    uf = UnionFind(nonzero)
    step = f.elem(k)
    for x in nonzero:
        uf.union(x, f.mul(x, step))
        uf.union(x, f.frobenius(x))
    return tuple(g[0] for g in uf.groups())


def f_key(f: Field, key: PolyKey) -> PolyKey:
    # key[k] is the degree d-k coefficient
    n = f.q - 1
    return tuple(0 if c == 0 else (c - 1 + k) % n + 1 for k, c in enumerate(key))


def g_key(f: Field, key: PolyKey) -> PolyKey:
    return tuple(f.frobenius(c) for c in key)


def f_map(P: Poly) -> Poly:
    return Poly.from_key(P.field, f_key(P.field, P.key()))


def g_map(P: Poly) -> Poly:
    return Poly.from_key(P.field, g_key(P.field, P.key()))


def _element_g_len(f: Field, x: int) -> int:
    r, y = 1, f.frobenius(x)
    while y != x:
        y = f.frobenius(y)
        r += 1
    return r


def f_cycle_len(P: Poly) -> int:
    """
    Length of the F-cycle on P: (q-1)/j with j = gcd(q-1, every k such that a_{d-k} != 0).
    """
    n = P.field.q - 1
    ks = [k for k, c in enumerate(P.key()) if k >= 1 and c != 0]
    return n // reduce(gcd, ks, n)


def g_cycle_len(P: Poly) -> int:
    key = P.key()
    r, cur = 1, g_key(P.field, key)
    while cur != key:
        cur = g_key(P.field, cur)
        r += 1
    return r


@dataclass(frozen=True)
class CycleInfo:
    f_len: int
    g_len: int

    # Degree -> (F_k-cycle length, G-cycle length) of each nonzero non-leading coefficient
    per_coefficient: Dict[int, Tuple[int, int]] = field(default_factory=dict)


def cycle_info(P: Poly) -> CycleInfo:
    f = P.field
    n = f.q - 1
    d = P.degree
    per = {
        d - k: (n // gcd(k, n), _element_g_len(f, c))
        for k, c in enumerate(P.key())
        if k >= 1 and c != 0
    }
    return CycleInfo(f_cycle_len(P), g_cycle_len(P), per)


@dataclass(frozen=True)
class EquivClass:
    representative: Poly
    members: FrozenSet[PolyKey] = field(repr=False)
    f_len: int
    g_len: int

    @property
    def size(self) -> int:
        return len(self.members)

    def record(self, with_members: bool = False) -> Dict[str, Any]:
        ret: Dict[str, Any] = {
            "representative": str(self.representative),
            "size": self.size,
            "f_len": self.f_len,
            "g_len": self.g_len,
            "members_count": self.size,
        }
        if with_members:
            ret["members"] = [",".join(str(c) for c in key) for key in sorted(self.members)]
        return ret


def fg_closure(f: Field, key: PolyKey) -> Set[PolyKey]:
    seen = {key}
    frontier = [key]
    while frontier:
        found = []
        for cur in frontier:
            for img in (f_key(f, cur), g_key(f, cur)):
                if img not in seen:
                    seen.add(img)
                    found.append(img)
        frontier = found
    return seen


def shift_closure(f: Field, keys: Iterable[PolyKey]) -> Set[PolyKey]:
    """
    Every P(x + b) - P(b) for P in keys and b in the field.
    """
    rows = np.array([key[::-1] for key in keys], dtype=np.int64)
    family = shift_family(f, rows)
    flat = family.reshape(-1, rows.shape[1])[:, ::-1]
    return set(map(tuple, flat.tolist()))


def equiv_class(P: Poly, include_shift: bool) -> EquivClass:
    """
    The closure of P under the F-map and G-map, and when include_shift is set also under
    P(x) -> P(x + b) - P(b). F and G carry shifts by b to shifts by t*b and b^p, so shifting
    the F/G closure once is enough.
    """
    f = P.field
    members = fg_closure(f, P.key())
    if include_shift:
        members = shift_closure(f, members)
    rep = Poly.from_key(f, min(members))
    return EquivClass(
        representative=rep,
        members=frozenset(members),
        f_len=f_cycle_len(rep),
        g_len=g_cycle_len(rep),
    )
