"""Command-line front end: ``ncquot {motive,series,verify,count,table}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import laurent
from .fqoracle import DEFAULT_BUDGET, SUPPORTED_PRIMES, BudgetExceeded, FqTupleSpace, count_strata
from .laurent import LPoly, format_latex, format_plain
from .motives import (
    MotiveCache,
    betti_numbers,
    dimension,
    euler_char,
    ncquot_motive,
    rearranged_identity_check,
    rearranged_rhs,
)
from .series import (
    TruncSeries,
    factorization_residual,
    fuss_catalan_series,
    functional_residual_z1,
    reineke_residual,
    solve_z1_functional,
    z_series,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
FORMATS = ("plain", "json", "csv", "latex")
SUITES = ("functional", "factorization", "solver", "reineke", "rearranged", "euler", "all")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    r: int | None = None
    d: int | None = None
    p: int | None = None
    order: int = 8
    n_max: int | None = None
    format: str = "plain"
    budget: int = DEFAULT_BUDGET
    shards: int | None = None
    suite: str = "all"
    check: bool = False
    column: str = "motive"

    def validate(self) -> None:
        if self.n is not None and self.n < 0:
            raise ValueError("-n must be >= 0")
        if self.r is not None and self.r < 1:
            raise ValueError("-r must be >= 1")
        if self.d is not None and self.d < 1:
            raise ValueError("-d must be >= 1")
        if self.p is not None and self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"-p must be one of {', '.join(map(str, SUPPORTED_PRIMES))}")
        if self.order < 0:
            raise ValueError("--order must be >= 0")
        if self.n_max is not None and self.n_max < 0:
            raise ValueError("--n-max must be >= 0")
        if self.budget < 1:
            raise ValueError("--budget must be positive")
        if self.shards is not None and self.shards < 1:
            raise ValueError("--shards must be positive")


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=False)


# motive


def cmd_motive(cfg: RunConfig, cache: MotiveCache) -> tuple[int, str]:
    n, r, d = cfg.n, cfg.r, cfg.d
    motive = ncquot_motive(n, r, d, cache)
    betti = betti_numbers(n, r, d, cache)
    dim, chi = dimension(n, r, d), euler_char(n, r, d, cache)
    if cfg.format == "json":
        out = _json({
            "n": n, "r": r, "d": d, "dim": str(dim), "euler": str(chi),
            "poly": laurent.to_json_obj(motive),
            "betti": [[k, str(b)] for k, b in betti],
        })
    elif cfg.format == "csv":
        rows = [("n", "r", "d", "dim", "euler", "degree", "betti")]
        rows += [(n, r, d, dim, chi, k, b) for k, b in betti]
        out = _csv(rows)
    elif cfg.format == "latex":
        out = rf"[\mathrm{{ncQuot}}^{{{n}}}_{{{r},{d}}}] = {format_latex(motive)}"
    else:
        out = "\n".join([
            format_plain(motive),
            f"dim: {dim}",
            "betti: " + " ".join(f"{k}:{b}" for k, b in betti),
            f"euler: {chi}",
        ])
    return EXIT_OK, out


# series


def _render_series(z: TruncSeries, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return _json({**meta, **z.to_json_obj()})
    if fmt == "csv":
        return _csv([("n", "coefficient")] + [(i, format_plain(c)) for i, c in enumerate(z.coeffs)])
    if fmt == "latex":
        terms = []
        for i, c in enumerate(z.coeffs):
            if c.is_zero():
                continue
            t = "" if i == 0 else ("t" if i == 1 else f"t^{{{i}}}")
            terms.append(f"({format_latex(c)}){t}" if t else format_latex(c))
        return " + ".join(terms) + rf" + O(t^{{{z.order + 1}}})"
    return "[" + ", ".join(format_plain(c) for c in z.coeffs) + "]"


def cmd_series(cfg: RunConfig, cache: MotiveCache) -> tuple[int, str]:
    z = z_series(cfg.r, cfg.d, cfg.order, cache)
    return EXIT_OK, _render_series(z, cfg.format, {"r": cfg.r, "d": cfg.d})


# verify


def _residual_line(name: str, params: str, res: TruncSeries) -> tuple[bool, str]:
    i = res.first_nonzero()
    if i is None:
        return True, f"PASS {name} {params}"
    return False, f"FAIL {name} {params}: coefficient of t^{i} is {format_plain(res.coeffs[i])}"


def _range_or(value: int | None, default: range) -> list[int]:
    return [value] if value is not None else list(default)


def run_suite(suite: str, cfg: RunConfig, cache: MotiveCache) -> list[tuple[bool, str]]:
    T = cfg.order
    ds = _range_or(cfg.d, range(1, 4))
    rs = _range_or(cfg.r, range(1, 4))
    lines: list[tuple[bool, str]] = []
    if suite == "functional":
        for d in ds:
            lines.append(_residual_line("functional", f"d={d} order={T}", functional_residual_z1(d, T, cache)))
    elif suite == "factorization":
        for r in rs:
            for d in ds:
                res = factorization_residual(r, d, T, cache)
                lines.append(_residual_line("factorization", f"r={r} d={d} order={T}", res))
    elif suite == "reineke":
        for r in rs:
            for d in ds:
                lines.append(_residual_line("reineke", f"r={r} d={d} order={T}", reineke_residual(r, d, T, cache)))
    elif suite == "solver":
        for d in ds:
            res = solve_z1_functional(d, T) - z_series(1, d, T, cache)
            lines.append(_residual_line("solver", f"d={d} order={T}", res))
    elif suite == "rearranged":
        ns = [cfg.n] if cfg.n is not None else list(range(0, (cfg.n_max if cfg.n_max is not None else 6) + 1))
        for n in ns:
            for r in rs:
                rhs = {d: rearranged_rhs(n, r, d, cache) for d in sorted(set(ds) | {1, 2, 3})}
                for d in ds:
                    params = f"n={n} r={r} d={d}"
                    if rearranged_identity_check(n, r, d, cache):
                        lines.append((True, f"PASS rearranged {params}"))
                    else:
                        lines.append((False, f"FAIL rearranged {params}: right-hand side is {format_plain(rhs[d])}"))
                same = len(set(rhs.values())) == 1
                ds_txt = ",".join(map(str, rhs))
                lines.append((same, f"{'PASS' if same else 'FAIL'} d-independence n={n} r={r} d in {{{ds_txt}}}"))
    elif suite == "euler":
        n_max = cfg.n_max if cfg.n_max is not None else 8
        for r in rs:
            for d in ds:
                expected = fuss_catalan_series(r, d, n_max)
                bad = next((n for n in range(n_max + 1) if euler_char(n, r, d, cache) != expected[n]), None)
                params = f"r={r} d={d} n_max={n_max}"
                if bad is None:
                    lines.append((True, f"PASS euler {params}"))
                else:
                    got = euler_char(bad, r, d, cache)
                    lines.append((False, f"FAIL euler {params}: n={bad} euler={got} expected={expected[bad]}"))
    else:
        raise ValueError(f"unknown suite {suite}")
    return lines


def cmd_verify(cfg: RunConfig, cache: MotiveCache) -> tuple[int, str]:
    suites = [s for s in SUITES if s != "all"] if cfg.suite == "all" else [cfg.suite]
    lines = []
    for s in suites:
        lines.extend(run_suite(s, cfg, cache))
    ok = all(flag for flag, _ in lines)
    if cfg.format == "json":
        out = _json({"ok": ok, "results": [{"pass": f, "line": t} for f, t in lines]})
    else:
        out = "\n".join(t for _, t in lines) + "\n" + ("PASS" if ok else "FAIL")
    return (EXIT_OK if ok else EXIT_FAIL), out


# count


def cmd_count(cfg: RunConfig, cache: MotiveCache) -> tuple[int, str]:
    space = FqTupleSpace(cfg.n, cfg.r, cfg.d, cfg.p, cfg.budget)
    report = count_strata(space, cache, shards=cfg.shards, checks=cfg.check)
    if cfg.format == "json":
        out = report.dumps()
    elif cfg.format == "csv":
        rows = [("k", "stratum_count")] + [(k, c) for k, c in enumerate(report.strata)]
        out = _csv(rows)
    else:
        lines = [
            f"n={report.n} r={report.r} d={report.d} p={report.p}",
            "strata: " + " ".join(str(c) for c in report.strata),
            f"u_count: {report.u_count}",
            f"gl_order: {report.gl_order}",
            f"quotient: {report.quotient}",
        ]
        lines += [f"{name}: {str(v).lower()}" for name, v in report.checks.items()]
        out = "\n".join(lines)
    return (EXIT_OK if report.ok else EXIT_FAIL), out


# table


def cmd_table(cfg: RunConfig, cache: MotiveCache) -> tuple[int, str]:
    n_max = cfg.n_max if cfg.n_max is not None else 4
    r, d = cfg.r, cfg.d
    columns = ["motive", "dim", "euler"] if cfg.column == "all" else [cfg.column]
    rows = []
    for n in range(n_max + 1):
        motive = ncquot_motive(n, r, d, cache)
        rows.append({"n": n, "motive": motive, "dim": dimension(n, r, d), "euler": euler_char(n, r, d, cache)})

    def cell(row, col, fmt):
        v = row[col]
        if isinstance(v, LPoly):
            if fmt == "latex":
                return format_latex(v)
            if fmt == "json":
                return laurent.to_json_obj(v)
            return format_plain(v)
        return str(v)

    if cfg.format == "json":
        return EXIT_OK, _json({"r": r, "d": d, "rows": [
            {"n": row["n"], **{c: cell(row, c, "json") for c in columns}} for row in rows
        ]})
    if cfg.format == "csv":
        return EXIT_OK, _csv([["n"] + columns] + [[row["n"]] + [cell(row, c, "csv") for c in columns] for row in rows])
    if cfg.format == "latex":
        body = [r"\begin{tabular}{" + "l" * (len(columns) + 1) + "}", " & ".join(["$n$"] + columns) + r" \\ \hline"]
        for row in rows:
            body.append(" & ".join([str(row["n"])] + [f"${cell(row, c, 'latex')}$" for c in columns]) + r" \\")
        body.append(r"\end{tabular}")
        return EXIT_OK, "\n".join(body)
    return EXIT_OK, "\n".join(f"{row['n']}: " + "  ".join(cell(row, c, "plain") for c in columns) for row in rows)


COMMANDS = {
    "motive": cmd_motive,
    "series": cmd_series,
    "verify": cmd_verify,
    "count": cmd_count,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncquot", description="Motives of noncommutative Quot schemes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=False, n_req=False, r_req=True, d_req=True):
        if n:
            p.add_argument("-n", type=int, required=n_req)
        p.add_argument("-r", type=int, required=r_req)
        p.add_argument("-d", type=int, required=d_req)
        p.add_argument("--format", choices=FORMATS, default="plain")

    common(sub.add_parser("motive", help="class of ncQuot^n_{r,d}"), n=True, n_req=True)

    p = sub.add_parser("series", help="Z_{r,d}(t) through t^order")
    common(p)
    p.add_argument("--order", type=int, default=8)

    p = sub.add_parser("verify", help="check the identities")
    common(p, n=True, r_req=False, d_req=False)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--n-max", type=int, default=None)

    p = sub.add_parser("count", help="brute-force point count over F_p")
    common(p, n=True, n_req=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare against the motive")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--shards", type=int, default=None)

    p = sub.add_parser("table", help="motives for n <= n-max")
    common(p)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--column", choices=("motive", "dim", "euler", "all"), default="motive")
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    budget = getattr(ns, "budget", None)
    if budget is None:
        env = os.environ.get("NCQUOT_BUDGET")
        try:
            budget = int(env) if env else DEFAULT_BUDGET
        except ValueError:
            parser.error(f"NCQUOT_BUDGET is not an integer: {env!r}")
    cfg = RunConfig(
        command=ns.command,
        n=getattr(ns, "n", None),
        r=ns.r,
        d=ns.d,
        p=getattr(ns, "p", None),
        order=getattr(ns, "order", 8),
        n_max=getattr(ns, "n_max", None),
        format=ns.format,
        budget=budget,
        shards=getattr(ns, "shards", None),
        suite=getattr(ns, "suite", "all"),
        check=getattr(ns, "check", False),
        column=getattr(ns, "column", "motive"),
    )
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(str(exc))
    return cfg


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    try:
        status, out = COMMANDS[cfg.command](cfg, MotiveCache())
    except BudgetExceeded as exc:
        print(f"error: {exc}; rerun with --budget {exc.required} or NCQUOT_BUDGET={exc.required}", file=sys.stderr)
        return EXIT_BUDGET
    print(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
