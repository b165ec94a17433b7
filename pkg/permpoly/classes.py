import argparse
import logging

from permpoly import report
from permpoly.permpoly import get_field, parse_degrees
from permpoly.search import run_searches
from permpoly.types import PermpolyUsageException


async def main(args: argparse.Namespace) -> int:
    degrees = parse_degrees(args.d)
    if len(degrees) != 1:
        raise PermpolyUsageException("classes takes a single degree")

    f = get_field(args)
    (result,) = await run_searches(f, degrees, args.workers)
    text = report.classes_csv(result)

    if args.output:
        report.write_whole(args.output, text)
        logging.info(f"Wrote {result.class_count} classes to {args.output}")
    else:
        for line in text.splitlines():
            if not line.startswith("#"):
                print(line)
    return 0
