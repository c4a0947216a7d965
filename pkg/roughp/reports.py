"""
Report and corpus persistence
Description: CSV/JSON exports of scan and generator results, and instance
files (header line ``k=<int>``, then one instance per line).
"""

import json
import logging
import os

import pandas as pd

from .errors import SymbolError
from .heuristic import CSV_COLUMNS
from .sigma import SymString

logger = logging.getLogger(__name__)

INSTANCE_COLUMNS = ["index", "instance", "length", "verified"]


def _ensure_parent(path):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)


def scan_frame(stats_rows):
    return pd.DataFrame([s.to_row() for s in stats_rows], columns=CSV_COLUMNS)


def write_scan_csv(stats_rows, path):
    """Fixed column order; byte-identical for identical inputs"""
    _ensure_parent(path)
    scan_frame(stats_rows).to_csv(path, index=False, lineterminator="\n")
    logger.info(f"Wrote {len(stats_rows)} scan rows to {path}")
    return path


def scan_csv_text(stats_rows):
    return scan_frame(stats_rows).to_csv(index=False, lineterminator="\n")


def write_json(payload, path):
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, default=str, ensure_ascii=False)
    logger.info(f"Wrote JSON report to {path}")
    return path


def write_instance_csv(report, path):
    _ensure_parent(path)
    frame = pd.DataFrame(report.records(), columns=INSTANCE_COLUMNS)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def write_instances(instances, k, path):
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"k={k}\n")
        for x in instances:
            f.write(f"{x.to_text()}\n")
    logger.info(f"Wrote {len(instances)} instances to {path}")
    return path


def read_instances(path):
    """Return (k, instances); every line is parsed against the header's k"""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().split("\n")
    header = lines[0].strip() if lines else ""
    if not header.startswith("k="):
        raise SymbolError(f"{path}: first line must be 'k=<int>', got {header!r}")
    try:
        k = int(header[2:])
    except ValueError:
        raise SymbolError(f"{path}: bad alphabet header {header!r}")
    body = lines[1:]
    if body and body[-1] == "":
        body.pop()
    return k, [SymString.parse(line, k) for line in body]
