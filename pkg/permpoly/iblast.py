"""
Exhaustive search for normalized permutation polynomials.

The coefficient space of a degree d normalized PP is split into masks (zero/nonzero support
patterns). Within a mask one nonzero coefficient is pinned to its F/G orbit
representatives and the rest run over all nonzero values. Candidates are evaluated in
numpy blocks, and every hit that isn't already known is expanded into its whole
equivalence class.
"""
import asyncio
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from permpoly.field import Field, build_field
from permpoly.normalize import RegimeKind, regime
from permpoly.orbits import EquivClass, coefficient_orbit_reps, equiv_class
from permpoly.poly import Poly, is_complete, power_columns, shift_family
from permpoly.report import write_whole
from permpoly.types import (
    BudgetExceeded,
    CheckpointMismatch,
    DegreeOutOfRange,
    FieldSpec,
    NoFreePosition,
    NotClosed,
    PolyKey,
)

# Candidate rows evaluated per numpy block
BLOCK_ROWS = 1 << 15

# Default limit on q^(d+1) for the brute force oracle
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Mask:
    d: int

    # pattern[k] describes the degree d-k coefficient; True means nonzero
    pattern: Tuple[bool, ...]

    @property
    def key(self) -> str:
        return "".join("1" if nz else "0" for nz in self.pattern)

    @classmethod
    def from_key(cls, key: str) -> "Mask":
        return cls(len(key) - 1, tuple(c == "1" for c in key))

    def nonzero_positions(self) -> List[int]:
        """Degrees of the nonzero coefficients, highest first."""
        return [self.d - k for k, nz in enumerate(self.pattern) if nz]

    def free_positions(self) -> List[int]:
        """Nonzero coefficients other than the leading one, highest first."""
        return [j for j in self.nonzero_positions() if j != self.d]

    def weight(self) -> int:
        return sum(self.pattern)


def _masks_over(d: int, fixed: Dict[int, bool]) -> List[Mask]:
    fixed = {**fixed, d: True, 0: False}
    free = [j for j in range(d - 1, 0, -1) if j not in fixed]
    masks = []
    for bits in product((False, True), repeat=len(free)):
        nonzero = {**fixed, **dict(zip(free, bits))}
        masks.append(Mask(d, tuple(nonzero[d - k] for k in range(d + 1))))
    return masks


def gen_masks(f: Field, d: int) -> List[Mask]:
    if d == 1:
        return [Mask(1, (True, False))]

    reg = regime(f.p, d)
    if reg.kind == RegimeKind.C:
        masks = _masks_over(d, {d - 1: False})
    elif reg.kind == RegimeKind.B_EXCEPTION:
        masks = _masks_over(d, {})
    else:
        first, second = reg.positions
        masks = _masks_over(d, {first: False}) + _masks_over(d, {first: True, second: False})

    # Sparse masks first
    return sorted(masks, key=lambda m: (m.weight(), m.key))


def choose_fixed(mask: Mask, f: Field) -> Tuple[int, Tuple[int, ...]]:
    """
    The nonzero coefficient with the fewest orbit representatives, and those
    representatives. Ties go to the higher degree.
    """
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for j in mask.free_positions():
        reps = coefficient_orbit_reps(f, mask.d - j)
        if best is None or len(reps) < len(best[1]):
            best = (j, reps)
    if best is None:
        raise NoFreePosition(f"Mask {mask.key} has no nonzero coefficient below the leading one")
    return best


def mask_ranges(mask: Mask, f: Field) -> List[Sequence[int]]:
    """
    Values to try for each coefficient a_0..a_d within the mask.
    """
    nonzero = range(1, f.q)
    ranges: List[Sequence[int]] = [(0,)] * (mask.d + 1)
    ranges[mask.d] = (1,)
    try:
        pinned, reps = choose_fixed(mask, f)
    except NoFreePosition:
        return ranges
    for j in mask.free_positions():
        ranges[j] = reps if j == pinned else nonzero
    return ranges


@lru_cache(maxsize=None)
def term_table(f: Field, d: int) -> np.ndarray:
    """
    term[j, c] holds the values of c * x^j on every element.
    """
    powers = power_columns(f, d)
    cs = np.arange(f.q)
    return f.vmul(cs[None, :, None], powers[:, None, :])


def _perm_rows(values: np.ndarray) -> np.ndarray:
    return np.all(np.sort(values, axis=1) == np.arange(values.shape[1]), axis=1)


def scan(f: Field, ranges: Sequence[Sequence[int]], block_rows: int = BLOCK_ROWS) -> List[PolyKey]:
    """
    Every coefficient vector drawn from ranges (ranges[j] lists the values of a_j) that
    permutes the field, in odometer order with the lowest degree changing fastest.
    """
    d = len(ranges) - 1
    term = term_table(f, d)
    q = f.q

    base = np.zeros(q, dtype=np.int64)
    template = [0] * (d + 1)
    varying = []
    for j, vals in enumerate(ranges):
        if len(vals) == 1:
            base = f.vadd(base, term[j, vals[0]])
            template[j] = vals[0]
        else:
            varying.append(j)

    # The lowest varying degrees go in one broadcast block, the rest are iterated
    inner: List[int] = []
    rows = 1
    for j in varying:
        if inner and rows * len(ranges[j]) > block_rows:
            break
        inner.append(j)
        rows *= len(ranges[j])
    outer = [j for j in varying if j not in inner]
    inner_desc, outer_desc = inner[::-1], outer[::-1]

    block = base[None, :]
    for j in inner_desc:
        vals = np.asarray(ranges[j])
        block = f.vadd(block[:, None, :], term[j, vals][None, :, :]).reshape(-1, q)
    inner_coeffs = np.array(
        list(product(*(ranges[j] for j in inner_desc))), dtype=np.int64
    ).reshape(len(block), len(inner_desc))

    hits = []
    for combo in product(*(ranges[j] for j in outer_desc)):
        offset = np.zeros(q, dtype=np.int64)
        for j, c in zip(outer_desc, combo):
            offset = f.vadd(offset, term[j, c])
        found = np.flatnonzero(_perm_rows(f.vadd(block, offset[None, :])))
        for r in found:
            coeffs = list(template)
            for j, c in zip(outer_desc, combo):
                coeffs[j] = c
            for j, c in zip(inner_desc, inner_coeffs[r]):
                coeffs[j] = int(c)
            hits.append(tuple(coeffs[::-1]))
    return hits


@lru_cache(maxsize=None)
def _field_for(spec: FieldSpec) -> Field:
    return build_field(spec)


def scan_mask(spec: FieldSpec, mask_key: str) -> List[PolyKey]:
    """
    Scan a single mask. Takes only picklable arguments so it can run in a worker process.
    """
    f = _field_for(spec)
    mask = Mask.from_key(mask_key)
    return scan(f, mask_ranges(mask, f))


@dataclass
class Checkpoint:
    path: str
    spec: FieldSpec
    d: int

    # Mask key -> hits found in it
    completed: Dict[str, List[PolyKey]] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str, spec: FieldSpec, d: int) -> "Checkpoint":
        ret = cls(path, spec, d)
        if not os.path.exists(path):
            return ret
        with open(path) as f:
            data = json.load(f)
        if (data["q"], data["d"], data["prim_poly"]) != (spec.q, d, spec.prim_poly_text()):
            raise CheckpointMismatch(
                f"Checkpoint {path} is for q={data['q']} d={data['d']}"
                f" prim_poly={data['prim_poly']}"
            )
        ret.completed = {k: [tuple(h) for h in hits] for k, hits in data["completed"].items()}
        logging.info(f"Resuming from {path}: {len(ret.completed)} masks already done")
        return ret

    def record(self, mask_key: str, hits: List[PolyKey]) -> None:
        self.completed[mask_key] = hits
        data = {
            "q": self.spec.q,
            "d": self.d,
            "prim_poly": self.spec.prim_poly_text(),
            "completed": {k: [list(h) for h in v] for k, v in sorted(self.completed.items())},
        }
        write_whole(self.path, json.dumps(data))


@dataclass
class SearchReport:
    spec: FieldSpec
    d: int
    npp_count: int
    class_count: int
    total_pps: int

    # Sorted by representative
    classes: List[EquivClass] = field(repr=False)

    # All nPPs found
    npps: FrozenSet[PolyKey] = field(repr=False)

    wall_time: float = 0.0

    # Number of nPPs P for which P + x is also a PP, when asked for
    complete_count: Optional[int] = None

    @property
    def q(self) -> int:
        return self.spec.q


def total_pp_count(npp_count: int, f: Field, d: int) -> int:
    """
    Number of degree d PPs, given the number of nPPs. Every PP is a*N(x + b) + c for
    exactly one nPP N and a unique (a, b, c) when p doesn't divide d; when p | d the nPP
    set already holds the shifts, leaving only a and c.
    """
    q = f.q
    if d == 1 or d % f.p == 0:
        return npp_count * q * (q - 1)
    return npp_count * q * q * (q - 1)


def merge_hits(
    f: Field, d: int, masks: List[Mask], hits_by_mask: Dict[str, List[PolyKey]]
) -> Tuple[Set[PolyKey], List[EquivClass]]:
    """
    Expand hits into classes in mask order, skipping hits that an earlier class already
    covers. The order is fixed, so the result doesn't depend on how masks were scheduled.
    """
    include_shift = d % f.p == 0
    found: Set[PolyKey] = set()
    classes = []
    for mask in masks:
        for key in hits_by_mask[mask.key]:
            if key in found:
                continue
            cls = equiv_class(Poly.from_key(f, key), include_shift)
            found |= cls.members
            classes.append(cls)
    classes.sort(key=lambda c: c.representative.key())
    return found, classes


async def search_async(
    f: Field,
    d: int,
    workers: int = 1,
    checkpoint_path: Optional[str] = None,
    complete: bool = False,
) -> SearchReport:
    if not 1 <= d <= f.q - 2:
        raise DegreeOutOfRange(f"Degree {d} is outside 1..{f.q - 2} for {f}")

    start = time.monotonic()
    masks = gen_masks(f, d)
    checkpoint = Checkpoint.load(checkpoint_path, f.spec, d) if checkpoint_path else None
    hits_by_mask: Dict[str, List[PolyKey]] = dict(checkpoint.completed) if checkpoint else {}
    todo = [m for m in masks if m.key not in hits_by_mask]
    logging.debug(f"{f} degree {d}: {len(masks)} masks, {len(todo)} to scan")

    def done(mask_key: str, hits: List[PolyKey]) -> None:
        hits_by_mask[mask_key] = hits
        logging.debug(f"Mask {mask_key}: {len(hits)} hits")
        if checkpoint:
            checkpoint.record(mask_key, hits)

    if workers > 1 and len(todo) > 1:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:

            async def run(mask: Mask) -> None:
                hits = await loop.run_in_executor(pool, scan_mask, f.spec, mask.key)
                done(mask.key, hits)

            await asyncio.gather(*(run(m) for m in todo))
    else:
        for mask in todo:
            done(mask.key, scan(f, mask_ranges(mask, f)))

    npps, classes = merge_hits(f, d, masks, hits_by_mask)
    complete_count = None
    if complete:
        complete_count = sum(1 for key in npps if is_complete(Poly.from_key(f, key)))

    report = SearchReport(
        spec=f.spec,
        d=d,
        npp_count=len(npps),
        class_count=len(classes),
        total_pps=total_pp_count(len(npps), f, d),
        classes=classes,
        npps=frozenset(npps),
        wall_time=time.monotonic() - start,
        complete_count=complete_count,
    )
    logging.info(
        f"{f} degree {d}: {report.npp_count} nPPs in {report.class_count} classes,"
        f" {report.total_pps:,} PPs ({report.wall_time:.1f}s)"
    )
    return report


def search(
    f: Field,
    d: int,
    workers: int = 1,
    checkpoint_path: Optional[str] = None,
    complete: bool = False,
) -> SearchReport:
    loop = asyncio.new_event_loop()
    try:
        return loop.run_until_complete(search_async(f, d, workers, checkpoint_path, complete))
    finally:
        loop.close()


def class_reps(f: Field, d: int, npps: Set[PolyKey]) -> List[EquivClass]:
    """
    Split a closed set of nPPs into its equivalence classes.
    """
    include_shift = d % f.p == 0
    remaining = set(npps)
    classes = []
    while remaining:
        cls = equiv_class(Poly.from_key(f, min(remaining)), include_shift)
        if not cls.members <= remaining:
            outside = min(cls.members - remaining)
            raise NotClosed(
                f"Class of {cls.representative} contains {','.join(map(str, outside))}"
                " which is not in the given set"
            )
        remaining -= cls.members
        classes.append(cls)
    return classes


def brute_force(
    f: Field, d: int, budget: int = DEFAULT_BUDGET, collect: bool = False
) -> Tuple[int, Optional[Set[PolyKey]]]:
    """
    Count degree d PPs by testing every coefficient vector with a nonzero leading term.
    """
    if not 1 <= d <= f.q - 2:
        raise DegreeOutOfRange(f"Degree {d} is outside 1..{f.q - 2} for {f}")
    needed = f.q ** (d + 1)
    if needed > budget:
        raise BudgetExceeded(needed, budget)

    every = range(f.q)
    hits = scan(f, [every] * d + [range(1, f.q)])
    return len(hits), (set(hits) if collect else None)


def expand_pps(f: Field, d: int, npps: Set[PolyKey], budget: int = DEFAULT_BUDGET) -> Set[PolyKey]:
    """
    Every degree d PP, rebuilt as a*N(x + b) + c from the nPPs N.
    """
    expected = total_pp_count(len(npps), f, d)
    if expected > budget:
        raise BudgetExceeded(expected, budget)
    if not npps:
        return set()

    rows = np.array([key[::-1] for key in sorted(npps)], dtype=np.int64)
    if d % f.p != 0:
        rows = shift_family(f, rows).reshape(-1, d + 1)

    out: Set[PolyKey] = set()
    for a in range(1, f.q):
        scaled = f.vmul(rows, a)
        for c in range(f.q):
            scaled[:, 0] = c
            out.update(map(tuple, scaled[:, ::-1].tolist()))
    return out
