"""
Permutation arrays built from permutation polynomials, and the lower bounds on M(n, D)
that follow from PP counts.

Two distinct PPs of degree at most d agree in at most d points, so the PPs of degree <= d
over GF(q) form a permutation array of length q with Hamming distance at least q - d.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from permpoly.field import Field
from permpoly.poly import Poly, is_perm_vector
from permpoly.registry import DATA_DIR
from permpoly.report import BoundRow, CountRow, bounds_csv, read_counts_file, write_whole
from permpoly.types import LengthMismatch, MissingCount, NotAPermutation, PolyKey

PUBLISHED_COUNTS = f"{DATA_DIR}/published_counts.csv"

# Upper limit on elements compared per numpy chunk in verify_pa
CHUNK_ELEMENTS = 1 << 24


@dataclass
class PermArray:
    n: int

    # One permutation of range(n) per row
    perms: np.ndarray

    # Filled in by verify_pa
    min_hd: Optional[int] = None

    @property
    def rows(self) -> int:
        return len(self.perms)


def perm_of(P: Poly) -> np.ndarray:
    values = P.values()
    if not is_perm_vector(values):
        raise NotAPermutation(f"{P.describe()} does not permute {P.field}")
    return values


def hamming(sigma: Sequence[int], pi: Sequence[int]) -> int:
    if len(sigma) != len(pi):
        raise LengthMismatch(f"Permutations of length {len(sigma)} and {len(pi)}")
    return int(np.count_nonzero(np.asarray(sigma) != np.asarray(pi)))


def verify_pa(A: PermArray, D: int) -> bool:
    """
    Check that every pair of rows disagrees in at least D positions, recording the smallest
    distance seen in A.min_hd. An array with fewer than two rows has min_hd = n.
    """
    perms = A.perms
    rows = len(perms)
    if perms.ndim != 2 or (rows and perms.shape[1] != A.n):
        raise LengthMismatch(f"Rows of {A.perms.shape} don't have length {A.n}")

    min_hd = A.n
    chunk = max(1, CHUNK_ELEMENTS // max(1, rows * A.n))
    for start in range(0, rows, chunk):
        block = perms[start : start + chunk]
        dist = np.count_nonzero(block[:, None, :] != perms[None, :, :], axis=2)
        # Only count pairs (i, j) with j > i
        idx = np.arange(start, start + len(block))[:, None]
        dist = np.where(np.arange(rows)[None, :] > idx, dist, A.n)
        if dist.size:
            min_hd = min(min_hd, int(dist.min()))

    A.min_hd = min_hd
    logging.debug(f"{rows} permutations of length {A.n}: min distance {min_hd}")
    return min_hd >= D


def pa_from_polys(f: Field, polys: Iterable[PolyKey]) -> PermArray:
    perms = [perm_of(Poly.from_key(f, key)) for key in sorted(polys)]
    arr = np.array(perms, dtype=np.int64).reshape(len(perms), f.q)
    return PermArray(n=f.q, perms=arr)


def write_pa(A: PermArray, path: str) -> None:
    write_whole(path, "".join(" ".join(map(str, row)) + "\n" for row in A.perms.tolist()))


def m_lower_bound(q: int, d: int, counts: Dict[int, int]) -> int:
    """
    M(q, q-d) >= N_1(q) + ... + N_d(q).
    """
    missing = tuple(k for k in range(1, d + 1) if k not in counts)
    if missing:
        raise MissingCount(q, missing)
    return sum(counts[k] for k in range(1, d + 1))


def shortened_bound(n: int, D: int, bound: int) -> BoundRow:
    """
    M(n-1, D) >= ceil(M(n, D) / n): keep the rows holding the most frequent symbol in the
    first column, then drop that column. The kept rows agree there, so their distance stays D.
    """
    return BoundRow(n - 1, D, -(-bound // n), f"shortened M({n},{D})")


def bound_rows(q: int, d: int, bound: int, source: str) -> List[BoundRow]:
    D = q - d
    rows = [BoundRow(q, D, bound, f"sum N_1..N_{d} ({source})")]
    if D > 1:
        rows.append(shortened_bound(q, D, bound))
    return rows


def write_bounds(rows: List[BoundRow], path: str) -> None:
    write_whole(path, bounds_csv(rows))


def counts_for(rows: Iterable[CountRow], q: int) -> Dict[int, int]:
    return {row.d: row.total for row in rows if row.q == q}


def read_counts(path: str, q: int) -> Dict[int, int]:
    return counts_for(read_counts_file(path), q)


def published_counts(q: int) -> Dict[int, int]:
    return read_counts(PUBLISHED_COUNTS, q)
