import argparse
import logging
from typing import Dict, Tuple

from permpoly import pa
from permpoly.permpoly import get_field, parse_degrees
from permpoly.search import run_searches
from permpoly.types import MissingCount, PermpolyUsageException


async def get_counts(args: argparse.Namespace, q: int, d: int) -> Tuple[Dict[int, int], str]:
    if args.counts:
        return pa.read_counts(args.counts, q), args.counts
    if args.published:
        return pa.published_counts(q), "published"
    if args.compute:
        f = get_field(args)
        reports = await run_searches(f, list(range(1, d + 1)), args.workers)
        return {r.d: r.total_pps for r in reports}, "computed"
    raise MissingCount(q, tuple(range(1, d + 1)))


async def main(args: argparse.Namespace) -> int:
    degrees = parse_degrees(args.d)
    if len(degrees) != 1:
        raise PermpolyUsageException("bounds takes a single degree")
    (d,) = degrees

    if args.q is not None:
        q = args.q
    elif args.p is not None:
        q = args.p ** (args.m or 1)
    else:
        raise PermpolyUsageException("Need either --q or --p/--m to pick a field")

    counts, source = await get_counts(args, q, d)
    bound = pa.m_lower_bound(q, d, counts)
    rows = pa.bound_rows(q, d, bound, source)
    for row in rows:
        print(f"M({row.n},{row.D}) >= {row.bound}")

    if args.output:
        pa.write_bounds(rows, args.output)
        logging.info(f"Wrote {args.output}")
    return 0
