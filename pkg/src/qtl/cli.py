"""Command-line front end.

    qtl basis --d 1,1 --which c --format json
    qtl verify --suite symbolic --max-total 5
    qtl verify --suite oracle --field 4 --max-total 4
    qtl render --d 4,3,3,4 --a 3,1,1,2
    qtl intertwiners --d 1,1
    qtl strata --d 2,1
    qtl kappa --d 1,1,1

Exit codes: 0 success, 1 a verification failed, 2 bad configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bases import basis as get_basis
from .bases import certify
from .qlaurent import parse_scalar
from .strata import (InvariantFunction, StratumLabel, all_labels, is_realizable,
                     k_factor, stratum_dim)
from .tensorspace import check_shape, compositions

MAX_SYMBOLIC_TOTAL = 6


class ConfigError(ValueError):
    """Invalid command-line configuration (exit code 2)."""


def parse_shape(text: str) -> tuple:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise ConfigError(f"shape must be a comma list of integers, got {text!r}") from None
    if not parts or any(x < 0 for x in parts):
        raise ConfigError(f"shape entries must be non-negative, got {text!r}")
    return parts


# ---------------------------------------------------------------------------
# tables


def _label_json(lab) -> list:
    return [list(x) for x in lab]


def basis_table(shape, which: str) -> dict:
    shape = check_shape(shape)
    elems = get_basis(shape, which)
    reports = {tuple(r.index): r for r in certify(shape, which) if r.index != ()}
    stray = [r for r in certify(shape, which) if r.index == ()]
    rows = []
    for idx in sorted(elems):
        f = elems[idx]
        rep = reports[idx]
        rows.append({
            "index": list(idx),
            "certified": rep.certified,
            "failures": rep.failures,
            "support": [
                {"label": _label_json(lab), "value": str(v), "k": str(k_factor(lab))}
                for lab, v in sorted(f.values.items())
            ],
        })
    return {"shape": list(shape), "basis": which, "elements": rows,
            "certified": all(r["certified"] for r in rows) and not stray}


def parse_basis_table(data: dict) -> dict:
    """Inverse of basis_table on the function values: index -> InvariantFunction."""
    shape = tuple(data["shape"])
    out = {}
    for row in data["elements"]:
        values = {StratumLabel(*(tuple(x) for x in s["label"])): parse_scalar(s["value"])
                  for s in row["support"]}
        out[tuple(row["index"])] = InvariantFunction(shape, values)
    return out


def strata_table(shape) -> dict:
    shape = check_shape(shape)
    rows = []
    for lab in all_labels(shape):
        rows.append({"label": _label_json(lab), "k": str(k_factor(lab)),
                     "dim": stratum_dim(shape, lab), "realizable": is_realizable(shape, lab)})
    return {"shape": list(shape), "strata": rows}


def kappa_table(shape) -> dict:
    from .canbasis import canonical_table
    return canonical_table(check_shape(shape)).to_json()


def intertwiners_table(shape) -> dict:
    from .intertwiners import intertwiner_table
    return {"shape": list(check_shape(shape)), "rows": intertwiner_table(shape)}


# ---------------------------------------------------------------------------
# output


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _basis_csv(table) -> str:
    rows = []
    for el in table["elements"]:
        for s in el["support"]:
            rows.append([json.dumps(el["index"]), json.dumps(s["label"]), s["value"], s["k"],
                         str(el["certified"])])
    return _csv(["index", "label", "value", "k", "certified"], rows)


def _basis_text(table) -> str:
    lines = [f"basis {table['basis']} of d = {tuple(table['shape'])}: "
             f"{len(table['elements'])} elements"]
    for el in table["elements"]:
        mark = "ok" if el["certified"] else "FAILED"
        lines.append(f"  {tuple(el['index'])} [{mark}]")
        for s in el["support"]:
            w, r, n = (tuple(x) for x in s["label"])
            lines.append(f"      w={w} r={r} n={n}: {s['value']}")
        for msg in el["failures"]:
            lines.append(f"      ! {msg}")
    return "\n".join(lines) + "\n"


def _intertwiners_csv(table) -> str:
    rows = []
    for row in table["rows"]:
        for w, om in row["omega"]:
            rows.append([json.dumps(row["arcs"]), row["mu"], json.dumps(row["l"]),
                         json.dumps(row["m"]), row["c_b"], json.dumps(w), om])
    return _csv(["arcs", "mu", "l", "m", "c_b", "w", "omega"], rows)


def _intertwiners_text(table) -> str:
    lines = [f"intertwiners of d = {tuple(table['shape'])}"]
    for row in table["rows"]:
        arcs = ", ".join(f"{p}-{q}" for p, q in row["arcs"]) or "none"
        lines.append(f"  arcs {arcs}: mu={row['mu']} l={tuple(row['l'])} "
                     f"m={tuple(row['m'])} c_b={row['c_b']}")
        for w, om in row["omega"]:
            if om != "0":
                lines.append(f"      w={tuple(w)}: {om}")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_basis(args) -> int:
    shape = parse_shape(args.d)
    table = basis_table(shape, args.which)
    if args.format == "json":
        text = _dump_json(table)
    elif args.format == "csv":
        text = _basis_csv(table)
    else:
        text = _basis_text(table)
    _emit(text, args.output)
    return 0 if table["certified"] else 1


def cmd_verify(args) -> int:
    from .fqoracle import oracle
    from . import verify

    if args.max_total is not None and args.max_total < 1:
        raise ConfigError("--max-total must be positive")
    records = []
    if args.suite in ("symbolic", "all") or args.suite in verify.SUITES or args.suite == "quiver":
        total = 5 if args.max_total is None else args.max_total
        if total > MAX_SYMBOLIC_TOTAL:
            raise ConfigError(f"symbolic suites support |d| <= {MAX_SYMBOLIC_TOTAL}, got {total}")
        names = None if args.suite in ("symbolic", "all") else [args.suite]
        records.extend(verify.run_symbolic(total, names))
    if args.suite in ("oracle", "all") or args.suite in oracle.SUITES:
        total = 4 if args.max_total is None else args.max_total
        cap = oracle.current_cap()
        if total > cap:
            raise ConfigError(f"oracle enumeration capped at |d| <= {cap} (set QTL_CAP), got {total}")
        fields = args.field or [4, 9]
        for f in fields:
            if f not in (4, 9, 25):
                raise ConfigError(f"field size must be 4, 9 or 25, got {f}")
        names = list(oracle.SUITES) if args.suite in ("oracle", "all") else [args.suite]
        shapes = verify.shapes_up_to(total)
        for name in names:
            records.extend(oracle.verify_identity(name, shapes, fields))
    if not records and args.suite not in ("symbolic", "oracle", "all"):
        raise ConfigError(f"unknown suite {args.suite!r}")
    ok = all(r["pass"] for r in records)
    report = {"pass": ok, "count": len(records), "failures": sum(not r["pass"] for r in records),
              "records": records}
    _emit(_dump_json(report), args.output)
    if args.output:
        sys.stderr.write(f"{len(records)} checks, {report['failures']} failed\n")
    return 0 if ok else 1


def cmd_render(args) -> int:
    from .matchings import enumerate_lcm, enumerate_olcm, match_from_weights, render
    shape = parse_shape(args.d)
    if args.all:
        pieces = [render(S) for S in (enumerate_olcm(shape) if args.oriented else enumerate_lcm(shape))]
        _emit("\n\n".join(pieces) + "\n", args.output)
        return 0
    if args.a is None:
        raise ConfigError("render needs --a (or --all)")
    a = parse_shape(args.a)
    if len(a) != len(shape) or any(x > d for x, d in zip(a, shape)):
        raise ConfigError(f"weights {a} do not fit the shape {shape}")
    _emit(render(match_from_weights(shape, a)) + "\n", args.output)
    return 0


def cmd_intertwiners(args) -> int:
    shape = parse_shape(args.d)
    table = intertwiners_table(shape)
    if args.format == "json":
        text = _dump_json(table)
    elif args.format == "csv":
        text = _intertwiners_csv(table)
    else:
        text = _intertwiners_text(table)
    _emit(text, args.output)
    return 0


def cmd_strata(args) -> int:
    _emit(_dump_json(strata_table(parse_shape(args.d))), args.output)
    return 0


def cmd_kappa(args) -> int:
    _emit(_dump_json(kappa_table(parse_shape(args.d))), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qtl", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="emit one of the bases e, c, s")
    b.add_argument("--d", required=True)
    b.add_argument("--which", choices=["e", "c", "s"], default="c")
    b.add_argument("--format", choices=["json", "csv", "text"], default="json")
    b.add_argument("--output")
    b.set_defaults(func=cmd_basis)

    v = sub.add_parser("verify", help="run identity suites, report JSON")
    v.add_argument("--suite", default="symbolic",
                   help="symbolic, oracle, all, or a single suite name")
    v.add_argument("--field", type=int, action="append", help="4, 9 or 25; repeatable")
    v.add_argument("--max-total", type=int)
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="ASCII picture of a match")
    r.add_argument("--d", required=True)
    r.add_argument("--a")
    r.add_argument("--all", action="store_true", help="every crossingless match of the shape")
    r.add_argument("--oriented", action="store_true", help="with --all: every oriented match")
    r.add_argument("--output")
    r.set_defaults(func=cmd_render)

    for name in ("intertwiners", "intertwiner-table"):
        t = sub.add_parser(name, help="c_b and omega per crossingless match")
        t.add_argument("--d", required=True)
        t.add_argument("--format", choices=["json", "csv", "text"], default="json")
        t.add_argument("--output")
        t.set_defaults(func=cmd_intertwiners)

    s = sub.add_parser("strata", help="stratum labels with k-factor and dimension")
    s.add_argument("--d", required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_strata)

    k = sub.add_parser("kappa", help="canonical basis coefficients")
    k.add_argument("--d", required=True)
    k.add_argument("--output")
    k.set_defaults(func=cmd_kappa)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"qtl: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
