"""Command-line interface.

Usage::

    symq linear --n 8 --k 5 --method both
    symq linear --n 16 --k 9 --emit-mappings --out good_16_9.json
    symq table --max-n 23 --out results/
    symq conjecture 3 5 7
    symq group tests/fixtures/groups/s3.txt --phi identity --subset all --method both
    symq compare ours.json theirs.json

Exit codes: 0 success, 2 input error, 3 internal inconsistency, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import closed_forms
from .constructors import linear_context, twisted_conj_subquandle
from .errors import BudgetError, InconsistencyError, SymqError
from .groups import GroupMap, make_unit_automorphism
from .involutions import BRUTE_CEILING, MAPPING_CAP, count_good
from .io import (dump_json, load_mapping_set, mappings_document, read_group_table, write_table1,
                 write_table2)

log = logging.getLogger("symq")

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_IO = 0, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    workers: int = 1
    brute_ceiling: int = BRUTE_CEILING
    mapping_cap: int = MAPPING_CAP
    seed: int = 0
    output_format: str = "text"

    def __post_init__(self):
        if self.workers < 1 or self.brute_ceiling < 1 or self.mapping_cap < 1:
            raise UsageError("worker count and ceilings must be positive")


def _config(args) -> RunConfig:
    workers = args.workers
    if workers is None:
        workers = int(os.environ.get("SYMQ_WORKERS", "1"))
    return RunConfig(workers, args.brute_ceiling, args.mapping_cap, args.seed, args.format)


def _emit(cfg: RunConfig, report: dict, out=None):
    if cfg.output_format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.keys())
        w.writerow(report.values())
        text = buf.getvalue()
    else:
        text = "".join(f"{k}: {v}\n" for k, v in report.items())
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_linear(args, cfg: RunConfig) -> int:
    n, k = args.n, args.k
    try:
        phi = make_unit_automorphism(n, k)
    except SymqError as exc:
        raise UsageError(str(exc)) from None
    ctx = linear_context(n, k)
    report = {"n": n, "k": k}
    if not phi.is_involution:
        report["reason"] = "not a kei"
    kw = dict(ceiling=cfg.brute_ceiling)
    if args.method != "brute":
        kw.update(mappings=args.emit_mappings or args.method == "both", workers=cfg.workers,
                  mapping_cap=cfg.mapping_cap)
    else:
        kw.update(mappings=args.emit_mappings)
    result = count_good(ctx, args.method, **kw)
    report["count"] = result.count
    report["method"] = result.method
    if result.cross_check:
        report["consistent"] = True
        report.update({f"{m}_count": c for m, c in result.cross_check.items()})
    report["nodes"] = result.nodes
    log.info("%s nodes in %.3fs", result.nodes, result.seconds)

    if args.emit_mappings:
        doc = mappings_document(result, n=n, k=k)
        text = dump_json(doc)
        try:
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
        except OSError as exc:
            log.error("cannot write mappings: %s", exc)
            return EXIT_IO
        if args.out:
            log.info("wrote %d mappings to %s", result.count, args.out)
        return EXIT_OK
    _emit(cfg, report)
    return EXIT_OK


def cmd_table(args, cfg: RunConfig) -> int:
    if args.max_n < 3:
        raise UsageError("--max-n must be at least 3")
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        log.error("cannot create %s: %s", out, exc)
        return EXIT_IO
    rows = []
    for n in range(3, args.max_n + 1):
        for k in closed_forms.table_k_order(n):
            row = closed_forms.linear_row(n, k, time_budget=args.time_budget, workers=cfg.workers)
            log.info("(%d,%s) -> %d [%s]", n, row.k_label, row.count, row.method)
            rows.append(row)
    report = closed_forms.table_totals(args.max_n, rows)
    try:
        write_table1(out / "table1.csv", rows)
        write_table2(out / "table2.csv", report.terms)
    except OSError as exc:
        log.error("cannot write tables: %s", exc)
        return EXIT_IO
    summary = {"rows": len(rows), "orders": len(report.terms), "mismatches": report.mismatches,
               "table1": str(out / "table1.csv"), "table2": str(out / "table2.csv")}
    _emit(cfg, summary)
    return EXIT_INCONSISTENT if report.mismatches else EXIT_OK


def cmd_conjecture(args, cfg: RunConfig) -> int:
    bad = [n for n in args.n if n < 3 or n % 2 == 0]
    if bad:
        raise UsageError(f"conjecture orders must be odd and at least 3, got {bad}")
    all_hold = True
    for n in args.n:
        rep = closed_forms.check_conjecture(n, workers=cfg.workers)
        verdict = "holds" if rep.holds else "FAILS"
        all_hold &= rep.holds and rep.fix_ok
        fix = "fix ok" if rep.fix_ok else "fix MISMATCH"
        print(f"n={n} Lambda({4 * n},{rep.k}) count={rep.count} expected={rep.expected} {verdict} ({fix})")
    return EXIT_OK if all_hold else 1


def _parse_indices(spec: str, what: str) -> list[int] | None:
    if spec in ("all", "identity"):
        return None
    try:
        vals = [int(v) for v in spec.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"{what} must be a list of element indices") from None
    return vals


def cmd_group(args, cfg: RunConfig) -> int:
    try:
        G = read_group_table(args.file, seed=cfg.seed)
    except OSError as exc:
        log.error("cannot read %s: %s", args.file, exc)
        return EXIT_IO
    except SymqError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    image = _parse_indices(args.phi, "--phi")
    try:
        phi = GroupMap.identity(G) if image is None else GroupMap.automorphism(G, image)
        subset = _parse_indices(args.subset, "--subset")
        X = range(G.order) if subset is None else subset
        ctx = twisted_conj_subquandle(G, phi, X)
    except SymqError as exc:
        raise UsageError(str(exc)) from None
    result = count_good(ctx, args.method, ceiling=cfg.brute_ceiling, **(
        {} if args.method == "brute" else {"workers": cfg.workers}))
    n_comp = len(ctx.quandle.components)
    report = {
        "group": G.label or args.file,
        "order": G.order,
        "carrier": len(ctx.X),
        "generated": len(ctx.generated),
        "S": len(ctx.S),
        "S_ambient": len(ctx.S_ambient),
        "components": n_comp,
        "count": result.count,
        "upper_bound": len(ctx.S_ambient) ** n_comp,
        "method": result.method,
    }
    if result.cross_check:
        report["consistent"] = True
    _emit(cfg, report)
    return EXIT_OK


def cmd_compare(args, cfg: RunConfig) -> int:
    try:
        a, b = load_mapping_set(args.left), load_mapping_set(args.right)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except (SymqError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report = {"left": len(a), "right": len(b), "only_left": len(a - b), "only_right": len(b - a)}
    _emit(cfg, report)
    return EXIT_OK if a == b else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $SYMQ_WORKERS or 1)")
    common.add_argument("--brute-ceiling", type=int, default=BRUTE_CEILING)
    common.add_argument("--mapping-cap", type=int, default=MAPPING_CAP)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled associativity checks")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="symq", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("linear", parents=[common], help="good involutions of Lambda(n, k)")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--method", choices=["auto", "brute", "theorem", "both"], default="auto")
    q.add_argument("--emit-mappings", action="store_true")
    q.add_argument("--out", help="write the mapping JSON here instead of stdout")
    q.set_defaults(func=cmd_linear)

    q = sub.add_parser("table", parents=[common], help="reproduce the linear-quandle tables")
    q.add_argument("--max-n", type=int, required=True)
    q.add_argument("--out", default=".")
    q.add_argument("--time-budget", type=float, default=120.0,
                   help="seconds per row before falling back to the closed form where one exists")
    q.set_defaults(func=cmd_table)

    q = sub.add_parser("conjecture", parents=[common], help="count good involutions of Lambda(4n, 2n-1)")
    q.add_argument("n", type=int, nargs="+")
    q.set_defaults(func=cmd_conjecture)

    q = sub.add_parser("group", parents=[common], help="twisted conjugation (sub)quandle of a table")
    q.add_argument("file")
    q.add_argument("--phi", default="identity", help="image list of the automorphism, or 'identity'")
    q.add_argument("--subset", default="all", help="element indices of X, or 'all'")
    q.add_argument("--method", choices=["auto", "brute", "theorem", "both"], default="auto")
    q.set_defaults(func=cmd_group)

    q = sub.add_parser("compare", parents=[common], help="compare two mapping JSON files as sets")
    q.add_argument("left")
    q.add_argument("right")
    q.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"symq: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"symq: inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except BudgetError as exc:
        print(f"symq: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
