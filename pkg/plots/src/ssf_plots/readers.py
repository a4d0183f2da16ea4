"""Parsers for the artifact schemas published by the primary component.

Every reader validates shape strictly and raises SchemaError with the
offending detail; silent coercion would defeat the point of golden plots.
"""

from __future__ import annotations

import json

from .errors import EmptyInput, SchemaError

RECORD_KEYS = {"lambda", "xi_det", "xi_mu", "xi_index", "xi_oracle",
               "bk_defect", "flags"}
CSV_HEADER = "lambda,xi_det,xi_mu,xi_index,xi_oracle,bk_defect"


def _json_lines(path: str):
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for k, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}:{k + 1}: not JSON: {exc}") from exc
    return rows


def read_records(path: str):
    """Shift-function records: jsonl or the csv projection."""
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.readline().strip()
    if head == CSV_HEADER:
        return _read_records_csv(path)
    rows = _json_lines(path)
    out = []
    for k, row in enumerate(rows):
        if not isinstance(row, dict) or not RECORD_KEYS <= set(row):
            raise SchemaError(f"{path}:{k + 1}: missing record keys")
        out.append(row)
    if not out:
        raise EmptyInput(f"{path}: no records")
    return out


def _read_records_csv(path: str):
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        next(fh)
        for k, line in enumerate(fh):
            cells = line.strip().split(",")
            if len(cells) != 6:
                raise SchemaError(f"{path}:{k + 2}: expected 6 csv cells")

            def val(s):
                return None if s == "" else float(s)

            out.append({
                "lambda": float(cells[0]), "xi_det": val(cells[1]),
                "xi_mu": val(cells[2]), "xi_index": val(cells[3]),
                "xi_oracle": val(cells[4]), "bk_defect": val(cells[5]),
                "flags": [],
            })
    if not out:
        raise EmptyInput(f"{path}: no records")
    return out


def read_mu(paths):
    """Flow step functions with their energies, one JSON object per line."""
    rows = []
    for path in paths:
        for k, row in enumerate(_json_lines(path)):
            if not isinstance(row, dict) or "tail" not in row or "jumps" not in row \
                    or "lambda" not in row:
                raise SchemaError(f"{path}:{k + 1}: not a flow record")
            for jump in row["jumps"]:
                if set(jump) != {"theta", "m"}:
                    raise SchemaError(f"{path}:{k + 1}: malformed jump entry")
            rows.append(row)
    if not rows:
        raise EmptyInput("no flow records")
    rows.sort(key=lambda r: r["lambda"])
    return rows


def read_det_trace(path: str):
    """Determinant trace csv: y, re_d, im_d, arg."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        head = fh.readline().strip()
        if head != "y,re_d,im_d,arg":
            raise SchemaError(f"{path}: unexpected header {head!r}")
        for k, line in enumerate(fh):
            cells = line.strip().split(",")
            if len(cells) != 4:
                raise SchemaError(f"{path}:{k + 2}: expected 4 csv cells")
            try:
                rows.append(tuple(float(c) for c in cells))
            except ValueError as exc:
                raise SchemaError(f"{path}:{k + 2}: {exc}") from exc
    if not rows:
        raise EmptyInput(f"{path}: no trace rows")
    return rows


def read_phase_trace(paths):
    """Sampled path spectra: {"t": float, "phases": [...]} per line."""
    rows = []
    for path in paths:
        for k, row in enumerate(_json_lines(path)):
            if not isinstance(row, dict) or "t" not in row or "phases" not in row:
                raise SchemaError(f"{path}:{k + 1}: not a phase-trace row")
            rows.append((float(row["t"]), [float(p) for p in row["phases"]]))
    if not rows:
        raise EmptyInput("no phase samples")
    rows.sort(key=lambda r: r[0])
    return rows
