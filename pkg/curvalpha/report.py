"""
Report rendering: CSV, JSON objects and JSON lines, plus run fingerprints
"""

import csv
import hashlib
import io
import json
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .alpha import Alpha0Result
from .polynomial import render
from .survey import ScanRecord, SweepRow
from .validation import validate_alpha0_report, validate_scan_record

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["alpha", "curvature_raw", "curvature_normalized", "bracket_sign"]
SCAN_COLUMNS = [
    "k",
    "eps",
    "alpha0",
    "alpha0_times_knorm",
    "b3_positive",
    "k_dot_eps",
    "exists",
    "below_cap",
    "reason",
]


def fingerprint(text: str) -> str:
    """SHA-256 of emitted output, for comparing reruns"""
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    logger.debug("report fingerprint %s", digest)
    return digest


def exact(q: Fraction) -> str:
    return str(q)


def _number(value: Optional[Fraction]) -> Optional[float]:
    return None if value is None else float(value)


def _csv_cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def _csv_text(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def sweep_csv(rows: Sequence[SweepRow], digits: int = 12) -> str:
    return _csv_text(
        SWEEP_COLUMNS,
        (
            [
                render(row.alpha, digits),
                render(row.curvature_raw, digits),
                render(row.curvature_normalized, digits),
                row.bracket_sign,
            ]
            for row in rows
        ),
    )


def alpha0_report(result: Alpha0Result, cap: Fraction, digits: int = 12) -> Dict[str, Any]:
    """JSON-ready threshold report, checked against its schema"""
    bracket = result.bracket
    data = {
        "k": str(result.k),
        "l": str(result.l),
        "exists": result.exists,
        "alpha0": _number(result.alpha0),
        "beta_bracket": None if bracket is None else [float(render(b, digits)) for b in bracket],
        "beta_bracket_exact": None if bracket is None else [exact(b) for b in bracket],
        "positive_roots": result.positive_roots,
        "reason": result.reason,
        "cap": exact(cap),
        "below_cap": result.below_cap(cap),
    }
    validate_alpha0_report(data)
    return data


def scan_record_dict(record: ScanRecord) -> Dict[str, Any]:
    data = {
        "k": str(record.k),
        "eps": str(record.eps),
        "alpha0": _number(record.alpha0),
        "alpha0_times_knorm": _number(record.alpha0_times_knorm),
        "b3_positive": record.b3_positive,
        "k_dot_eps": record.k_dot_eps,
        "exists": record.exists,
        "below_cap": record.below_cap,
        "reason": record.reason,
    }
    validate_scan_record(data)
    return data


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=False, separators=(", ", ": "))


def scan_jsonl(records: Sequence[ScanRecord]) -> str:
    return "".join(dumps(scan_record_dict(r)) + "\n" for r in records)


def scan_csv(records: Sequence[ScanRecord]) -> str:
    rows: List[List[Any]] = []
    for record in records:
        data = scan_record_dict(record)
        rows.append([_csv_cell(data[c]) for c in SCAN_COLUMNS])
    return _csv_text(SCAN_COLUMNS, rows)
