"""
Serialization of search results, class tables, counts and bounds.

Everything is rendered to a string first and written whole, so a reader never sees a
partially written file and two runs of the same command differ only in generated_at.
"""
import csv
import io
import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional

import permpoly
from permpoly.types import PermpolyUsageException

if TYPE_CHECKING:
    from permpoly.iblast import SearchReport

COUNT_COLUMNS = ["q", "d", "npps", "classes", "total"]
CLASS_COLUMNS = ["representative", "size", "f_len", "g_len"]
BOUND_COLUMNS = ["n", "D", "bound", "provenance"]


@dataclass(frozen=True)
class CountRow:
    q: int
    d: int
    total: int

    # Blank in published tables that only give totals
    npps: Optional[int] = None
    classes: Optional[int] = None


@dataclass(frozen=True)
class BoundRow:
    n: int
    D: int
    bound: int

    # Where the bound came from, e.g. "sum N_1..N_8 (published)" or "shortened from M(16,5)"
    provenance: str


def generated_at() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def write_whole(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as f:
        f.write(text)
    os.replace(tmp, path)


def _csv_text(header_line: str, columns: List[str], rows: Iterable[List[Any]]) -> str:
    out = io.StringIO()
    out.write(header_line + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return out.getvalue()


def _comment(stamp: str, **extra: Any) -> str:
    parts = [f"# generated_at {stamp}", f"permpoly {permpoly.__version__}"]
    parts.extend(f"{k}={v}" for k, v in extra.items())
    return " ".join(parts)


def report_record(
    report: "SearchReport", with_members: bool = False, stamp: Optional[str] = None
) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        "npps": report.npp_count,
        "classes": report.class_count,
        "total": report.total_pps,
    }
    if report.complete_count is not None:
        result["complete"] = report.complete_count
    return {
        "meta": {
            "q": report.q,
            "p": report.spec.p,
            "m": report.spec.m,
            "prim_poly": list(report.spec.prim_poly),
            "degree": report.d,
            "tool_version": permpoly.__version__,
            "generated_at": stamp or generated_at(),
        },
        "result": result,
        "classes": [c.record(with_members) for c in report.classes],
    }


def reports_json(reports: List["SearchReport"], with_members: bool = False) -> str:
    """
    A single report is written as an object, a degree range as a list of them.
    """
    stamp = generated_at()
    records = [report_record(r, with_members, stamp) for r in reports]
    obj: Any = records[0] if len(records) == 1 else records
    return json.dumps(obj, indent=2) + "\n"


def reports_csv(reports: List["SearchReport"]) -> str:
    extra = {"prim_poly": reports[0].spec.prim_poly_text()} if reports else {}
    return _csv_text(
        _comment(generated_at(), **extra),
        COUNT_COLUMNS,
        ([r.q, r.d, r.npp_count, r.class_count, r.total_pps] for r in reports),
    )


def classes_csv(report: "SearchReport") -> str:
    return _csv_text(
        _comment(generated_at(), q=report.q, d=report.d),
        CLASS_COLUMNS,
        ([str(c.representative), c.size, c.f_len, c.g_len] for c in report.classes),
    )


def bounds_csv(rows: List[BoundRow]) -> str:
    return _csv_text(
        _comment(generated_at()),
        BOUND_COLUMNS,
        ([r.n, r.D, r.bound, r.provenance] for r in rows),
    )


def _optional_int(text: Optional[str]) -> Optional[int]:
    if text is None or text.strip() == "":
        return None
    return int(text)


def parse_counts(text: str, source: str = "<counts>") -> List[CountRow]:
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    reader = csv.DictReader(lines)
    missing = [c for c in ("q", "d", "total") if c not in (reader.fieldnames or [])]
    if missing:
        raise PermpolyUsageException(f"Counts file {source} has no {', '.join(missing)} column")

    rows = []
    for n, rec in enumerate(reader, start=2):
        try:
            total = _optional_int(rec["total"])
            if total is None:
                raise ValueError("blank total")
            rows.append(
                CountRow(
                    q=int(rec["q"]),
                    d=int(rec["d"]),
                    total=total,
                    npps=_optional_int(rec.get("npps")),
                    classes=_optional_int(rec.get("classes")),
                )
            )
        except (TypeError, ValueError) as e:
            raise PermpolyUsageException(f"Bad row {n} in counts file {source}: {e}")
    return rows


def read_counts_file(path: str) -> List[CountRow]:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise PermpolyUsageException(f"Can't read counts file {path}: {e.strerror}")
    return parse_counts(text, path)
