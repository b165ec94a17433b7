import argparse
import logging
from typing import Set

from permpoly import iblast, logs, pa
from permpoly.permpoly import get_field, parse_degrees
from permpoly.search import run_searches
from permpoly.types import PermArrayException, PermpolyUsageException, PolyKey


async def main(args: argparse.Namespace) -> int:
    """
    Collect every PP of degree <= d and check that they form a permutation array with
    distance at least q - d.
    """
    degrees = parse_degrees(args.d)
    if len(degrees) != 1:
        raise PermpolyUsageException("pa takes a single degree")
    (d,) = degrees

    f = get_field(args)
    reports = await run_searches(f, list(range(1, d + 1)), args.workers)

    pps: Set[PolyKey] = set()
    remaining = args.budget
    for r in reports:
        pps |= iblast.expand_pps(f, r.d, set(r.npps), budget=remaining)
        remaining -= r.total_pps

    with logs.console.status(f"Checking {len(pps)} permutations"):
        array = pa.pa_from_polys(f, pps)
        ok = pa.verify_pa(array, f.q - d)

    print(f"{array.n} {array.rows} {array.min_hd}")
    if not ok:
        raise PermArrayException(
            f"Minimum distance {array.min_hd} is below {f.q - d} for degree <= {d} PPs"
        )

    if args.output:
        pa.write_pa(array, args.output)
        logging.info(f"Wrote {array.rows} permutations to {args.output}")
    return 0
