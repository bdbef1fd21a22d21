"""File formats: group tables, mapping JSON and table CSVs.

Group table files look like::

    # label S3
    6
    0 1 2 3 4 5
    1 0 ...

The first non-comment line is the order ``n``; the next ``n`` lines hold row
``g`` of the table, entry ``h`` being the 0-based index of ``g*h``.  A comment
of the form ``# label NAME`` names the group.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .errors import ShapeError
from .groups import FiniteGroup
from .involutions import GoodInvolutionSet


def parse_group_table(text: str, *, strict: bool = False, seed: int = 0) -> FiniteGroup:
    label = None
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) >= 2 and words[0] == "label":
                label = " ".join(words[1:])
            continue
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 1:
        raise ShapeError("group table must start with the order on its own line")
    try:
        n = int(rows[0][0])
        table = [[int(v) for v in row] for row in rows[1:]]
    except ValueError as exc:
        raise ShapeError(f"non-integer entry in group table: {exc}") from None
    if len(table) != n or any(len(row) != n for row in table):
        raise ShapeError(f"expected {n} rows of {n} entries")
    return FiniteGroup(table, label=label, strict=strict, seed=seed)


def read_group_table(path, **kwargs) -> FiniteGroup:
    return parse_group_table(Path(path).read_text(), **kwargs)


def format_group_table(G: FiniteGroup) -> str:
    lines = []
    if G.label:
        lines.append(f"# label {G.label}")
    lines.append(str(G.order))
    lines.extend(" ".join(map(str, row)) for row in G.mul)
    return "\n".join(lines) + "\n"


def mappings_document(result: GoodInvolutionSet, **header) -> dict:
    """JSON-ready dict: header fields, count, and one record per mapping."""
    doc = dict(header)
    doc["count"] = result.count
    records = []
    for g in result.mappings or []:
        rec = {"rho": list(g.mapping)}
        if g.inducing_psi is not None:
            rec["psi_star"] = {str(c): s for c, s in enumerate(g.inducing_psi)}
        records.append(rec)
    doc["mappings"] = records
    return doc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def load_mapping_set(path) -> set[tuple[int, ...]]:
    """The set of ``rho`` arrays in a mapping JSON file (order ignored)."""
    doc = json.loads(Path(path).read_text())
    try:
        return {tuple(int(v) for v in rec["rho"]) for rec in doc["mappings"]}
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"{path}: not a mapping document ({exc})") from None


def write_table1(path, rows: Iterable) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "k", "count", "method", "note"])
        for r in rows:
            w.writerow([r.n, r.k, r.count, r.method, "k=-1" if r.k == r.n - 1 else ""])


def write_table2(path, terms: Iterable[tuple[int, int]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "total"])
        w.writerows(terms)
