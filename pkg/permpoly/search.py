import argparse
import logging
from typing import List, Optional

from permpoly import iblast, logs, report
from permpoly.field import Field
from permpoly.iblast import SearchReport
from permpoly.permpoly import get_field, parse_degrees
from permpoly.types import PermpolyUsageException


def checkpoint_path(base: Optional[str], d: int, many: bool) -> Optional[str]:
    if not base:
        return None
    # One checkpoint per degree when searching a range
    return f"{base}.d{d}" if many else base


async def run_searches(
    f: Field,
    degrees: List[int],
    workers: int,
    checkpoint: Optional[str] = None,
    complete: bool = False,
) -> List[SearchReport]:
    if workers < 1:
        raise PermpolyUsageException(f"--workers must be at least 1, got {workers}")
    if workers > 1:
        logging.info(f"Scanning masks with {workers} worker processes")

    reports = []
    for d in degrees:
        with logs.console.status(f"Searching degree {d} over {f}"):
            reports.append(
                await iblast.search_async(
                    f,
                    d,
                    workers=workers,
                    checkpoint_path=checkpoint_path(checkpoint, d, len(degrees) > 1),
                    complete=complete,
                )
            )
    return reports


def summary_line(r: SearchReport) -> str:
    line = f"{r.q} {r.d} {r.npp_count} {r.class_count} {r.total_pps}"
    if r.complete_count is not None:
        line += f" complete={r.complete_count}"
    return line


async def main(args: argparse.Namespace) -> int:
    f = get_field(args)
    reports = await run_searches(
        f, parse_degrees(args.d), args.workers, args.checkpoint, args.complete
    )

    for r in reports:
        print(summary_line(r))

    if args.output:
        if args.format == "csv":
            text = report.reports_csv(reports)
        else:
            text = report.reports_json(reports, with_members=args.members)
        report.write_whole(args.output, text)
        logging.info(f"Wrote {args.output}")
    return 0
