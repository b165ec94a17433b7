import argparse
import logging

from permpoly import iblast
from permpoly.permpoly import get_field, parse_degrees
from permpoly.types import PermpolyUsageException


async def main(args: argparse.Namespace) -> int:
    """
    Count degree d PPs both by brute force and from the nPP search, and compare.
    """
    degrees = parse_degrees(args.d)
    if len(degrees) != 1:
        raise PermpolyUsageException("oracle takes a single degree")
    (d,) = degrees

    f = get_field(args)
    brute, _ = iblast.brute_force(f, d, budget=args.budget)
    found = await iblast.search_async(f, d)

    if brute == found.total_pps:
        print(f"MATCH brute={brute} search={found.total_pps}")
        return 0

    logging.error(f"{f} degree {d}: brute force and search disagree")
    print(
        f"MISMATCH brute={brute} search={found.total_pps}"
        f" (npps={found.npp_count}, classes={found.class_count})"
    )
    return 1
