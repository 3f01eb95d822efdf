"""Command-line front end.

Subcommands: verify, generate, apply, decompose, tables. Output is
deterministic: identical invocations produce byte-identical text (all
term orderings are lexicographic on exponent tuples).

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage, parse, or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Tuple

from . import __version__
from .weyl import BasisTag
from .spinor import Spinor
from .parsing import OperatorSyntaxError, parse_operator
from . import combinatorics as comb_mod
from .kernels import (
    howe_decompose,
    monogenic_minus,
    monogenic_plus,
    twistor_kernel_basis,
)
from .verify import VerificationReport, run_suite, suite_names

_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def _latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2)


def _load_spinor(path: str) -> Spinor:
    if path == "-":
        raw = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    data = json.loads(raw)
    return Spinor.from_json(data)


def _render_spinors(spinors: List[Spinor], fmt: str) -> str:
    if fmt == "json":
        if len(spinors) == 1:
            return _dump_json(spinors[0].to_json())
        return _dump_json([s.to_json() for s in spinors])
    if fmt == "latex":
        return "\n".join(s.to_latex() for s in spinors)
    return "\n".join(str(s) for s in spinors)


# ---- verify ----


def _render_report_latex(report: VerificationReport) -> str:
    lines = [r"\begin{tabular}{llp{9cm}}", r"id & status & statement \\", r"\hline"]
    for r in report.results:
        cell = _latex_escape(r.anchor)
        if r.witness:
            cell += r" \newline witness: " + _latex_escape(r.witness)
        lines.append(
            f"{_latex_escape(r.id)} & {r.status} & {cell} \\\\"
        )
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


def _cmd_verify(args) -> Tuple[int, str]:
    report = run_suite(args.suite)
    if args.format == "json":
        text = _dump_json(report.to_json())
    elif args.format == "latex":
        text = _render_report_latex(report)
    else:
        text = report.render_text()
    return report.exit_code, text


# ---- generate ----


def _cmd_generate(args) -> Tuple[int, str]:
    if args.m < 0:
        raise ValueError("m must be nonnegative")
    if args.kind == "monogenic+":
        spinors = [monogenic_plus(args.m)]
    elif args.kind == "monogenic-":
        spinors = [monogenic_minus(args.m, args.qmax)]
    else:
        spinors = twistor_kernel_basis(args.m, args.qmax)
    target = BasisTag.parse(args.basis) if args.basis else BasisTag.ZZBAR
    spinors = [s.change_basis(target) for s in spinors]
    return 0, _render_spinors(spinors, args.format)


# ---- apply ----


def _cmd_apply(args) -> Tuple[int, str]:
    spinor = _load_spinor(args.spinor_file)
    target = BasisTag.parse(args.basis) if args.basis else spinor.basis
    spinor = spinor.change_basis(target)
    op = parse_operator(args.op_expr, target)
    result = op.apply(spinor)
    return 0, _render_spinors([result], args.format)


# ---- decompose ----


def _homogeneous_parts(spinor: Spinor) -> List[Spinor]:
    grouped: Dict[int, dict] = {}
    for (e1, e2), poly in spinor.terms.items():
        grouped.setdefault(e1 + e2, {})[(e1, e2)] = poly
    return [Spinor(spinor.basis, grouped[l]) for l in sorted(grouped)]


def _cmd_decompose(args) -> Tuple[int, str]:
    spinor = _load_spinor(args.spinor_file)
    if args.basis:
        spinor = spinor.change_basis(BasisTag.parse(args.basis))
    components = []
    for part in _homogeneous_parts(spinor):
        components.extend(howe_decompose(part))  # reconstruction asserted inside
    components.sort(key=lambda c: (c.homogeneity + c.power, c.power))
    if args.format == "json":
        payload = {
            "components": [
                {
                    "homogeneity": c.homogeneity,
                    "power": c.power,
                    "monogenic": c.monogenic.to_json(),
                }
                for c in components
            ],
            "reconstruction_exact": True,
        }
        return 0, _dump_json(payload)
    lines = []
    for c in components:
        if args.format == "latex":
            lines.append(f"% homogeneity {c.homogeneity}, power {c.power}")
            lines.append(c.monogenic.to_latex())
        else:
            lines.append(f"l={c.homogeneity} j={c.power}: {c.monogenic}")
    suffix = "%" if args.format == "latex" else ""
    lines.append(f"{suffix}components: {len(components)}, reconstruction: exact")
    return 0, "\n".join(lines)


# ---- tables ----


def _a_rows(n: int) -> List[Tuple[int, List[int]]]:
    table = comb_mod.a_table(n)
    return [
        (j, [table[(j, k)] for k in range(n - 2 * j + 1)])
        for j in range(n // 2 + 1)
    ]


def _tilde_entries(n: int) -> List[Tuple[int, int, int]]:
    table = comb_mod.stirling_tilde(n)
    return [(i, r, table[(i, r)]) for (i, r) in sorted(table)]


def _grid_text(rows: List[List[str]]) -> str:
    width = max((len(cell) for row in rows for cell in row), default=1)
    return "\n".join(" ".join(cell.rjust(width) for cell in row) for row in rows)


def _grid_latex(rows: List[List[str]], ncols: int) -> str:
    lines = [r"\begin{array}{" + "r" * ncols + "}"]
    for row in rows:
        padded = row + [""] * (ncols - len(row))
        lines.append(" & ".join(padded) + r" \\")
    lines.append(r"\end{array}")
    return "\n".join(lines)


def _cmd_tables(args) -> Tuple[int, str]:
    if args.n < 0:
        raise ValueError("n must be nonnegative")
    n = args.n
    if args.which == "A":
        rows = _a_rows(n)
        flat = [v for _, entries in rows for v in entries]
    elif args.which == "stirling":
        entries = [comb_mod.stirling(n, m) for m in range(1, n + 1)]
        flat = list(entries)
    else:
        triples = _tilde_entries(n)
        flat = [v for _, _, v in triples]

    if args.flat:
        if args.format == "json":
            return 0, _dump_json({"which": args.which, "n": n, "flat": flat})
        if args.format == "latex":
            return 0, "$" + ", ".join(str(v) for v in flat) + "$"
        return 0, ",".join(str(v) for v in flat)

    if args.which == "A":
        if args.format == "json":
            payload = {
                "which": "A",
                "n": n,
                "rows": [{"j": j, "entries": entries} for j, entries in rows],
            }
            return 0, _dump_json(payload)
        cells = [[str(v) for v in entries] for _, entries in rows]
        if args.format == "latex":
            return 0, _grid_latex(cells, n + 1)
        body = _grid_text(cells).splitlines()
        return 0, "\n".join(
            f"j={j}: {line}" for (j, _), line in zip(rows, body)
        )
    if args.which == "stirling":
        if args.format == "json":
            return 0, _dump_json({"which": "stirling", "n": n, "entries": entries})
        if args.format == "latex":
            return 0, _grid_latex([[str(v) for v in entries]], max(len(entries), 1))
        shown = " ".join(str(v) for v in entries)
        return 0, f"s({n}, m) for m = 1..{n}: {shown}"
    triples = _tilde_entries(n)
    if args.format == "json":
        payload = {
            "which": "stirling-tilde",
            "n": n,
            "entries": [{"i": i, "r": r, "value": v} for i, r, v in triples],
        }
        return 0, _dump_json(payload)
    if args.format == "latex":
        table = comb_mod.stirling_tilde(n)
        max_r = max((r for _, r, _ in triples), default=0)
        grid = []
        for i in range(n + 1):
            row = []
            for r in range(max_r + 1):
                val = table.get((i, r))
                row.append("" if val is None else str(val))
            grid.append(row)
        return 0, _grid_latex(grid, max_r + 1)
    return 0, "\n".join(f"i={i} r={r}: {v}" for i, r, v in triples)


# ---- argument wiring ----


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--basis",
        choices=["xy", "zzbar"],
        default=None,
        help="coordinate basis for input interpretation and output",
    )
    common.add_argument(
        "--format",
        choices=["json", "latex", "text"],
        default="text",
        help="output rendering (default: text)",
    )
    common.add_argument(
        "--qmax",
        type=int,
        default=None,
        help="truncation bound override for kernel-family construction",
    )
    common.add_argument(
        "--output",
        default=None,
        metavar="PATH",
        help="write output to PATH instead of stdout",
    )

    parser = argparse.ArgumentParser(
        prog="symtwistor",
        description="Exact verification and generation tool for a "
        "supersymmetric Dirac/twistor operator system.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=suite_names())
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser(
        "generate", parents=[common], help="emit a canonical kernel representative"
    )
    p.add_argument("kind", choices=["monogenic+", "monogenic-", "twistor"])
    p.add_argument("m", type=int, help="homogeneity degree (nonnegative)")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser(
        "apply", parents=[common], help="apply an operator expression to a spinor file"
    )
    p.add_argument("op_expr", help="operator expression, e.g. 'dx - q*dq*dx + i*q^2*dy'")
    p.add_argument("spinor_file", help="spinor JSON path, or - for stdin")
    p.set_defaults(fn=_cmd_apply)

    p = sub.add_parser(
        "decompose",
        parents=[common],
        help="peel a polynomial spinor into raised Dirac-kernel layers",
    )
    p.add_argument("spinor_file", help="spinor JSON path, or - for stdin")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("tables", parents=[common], help="export combinatorial tables")
    p.add_argument("which", choices=["A", "stirling", "stirling-tilde"])
    p.add_argument("n", type=int, help="table order (nonnegative)")
    p.add_argument(
        "--flat",
        action="store_true",
        help="emit the row-major flat sequence over the triangular support",
    )
    p.set_defaults(fn=_cmd_tables)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.fn(args)
    except OperatorSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
