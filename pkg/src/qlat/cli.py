"""Command-line entry point.

Exit status: 0 when every check passes, 1 when an axiom check fails,
2 on input or usage errors (message on stderr).
"""

from __future__ import annotations

import argparse
import contextlib
import io as _stdio
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import exact
from .axioms import full_report
from .demo import JointMeasurement, chsh_value, correlation, epr_contradiction_demo, SINGLET
from .io import build, build_hilbert_lattice, lattice_document, parse_spec, to_json_value
from .product import SeparatedProductSystem, build_separated_product, separated_axiom_report
from .report import ParseError, QlatInputError
from .sps import StatePropertySystem

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

DEFAULT_ANGLES = (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)


def _parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    ap = argparse.ArgumentParser(prog="qlat", description="Axiom checks on finite property lattices.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("check", parents=[fmt], help="full axiom report for a .qlat file")
    p.add_argument("file")

    p = sub.add_parser("demo", help="Hilbert-space demonstrations")
    demos = p.add_subparsers(dest="demo", required=True, metavar="demo")
    d = demos.add_parser("epr", parents=[fmt], help="joint measurement of two separate yes-no tests")
    d.add_argument("--dim", nargs=2, type=int, metavar=("N1", "N2"), default=(2, 2))
    d = demos.add_parser("chsh", parents=[fmt], help="CHSH combination on the singlet")
    d.add_argument("--angles", nargs=4, type=float, metavar=("A", "A2", "B", "B2"), default=DEFAULT_ANGLES)

    p = sub.add_parser("product", parents=[fmt], help="separated product of two sps files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--extended", action="store_true", help="also seed with the certain-no sets")

    p = sub.add_parser("gen-hilbert", parents=[fmt], help="close seed subspaces into a lattice")
    p.add_argument("file")
    return ap


def _fmt_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{x:.12g}"


def _json_number(x):
    return str(x) if isinstance(x, Fraction) else x


def _emit_reports(reports, header: dict, fmt: str, out) -> int:
    failures = [r for r in reports if r.failed]
    code = EXIT_FAIL if failures else EXIT_OK
    if fmt == "json":
        doc = dict(header)
        doc["reports"] = [r.to_dict() for r in reports]
        doc["result"] = "fail" if failures else "pass"
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        return code
    for k, v in header.items():
        if not isinstance(v, (dict, list)):
            out.write(f"{k}: {v}\n")
    for r in reports:
        out.write(r.line() + "\n")
    if failures:
        out.write(f"result: FAIL ({len(failures)} of {len(reports)} checks failed)\n")
    else:
        out.write(f"result: PASS ({len(reports)} checks)\n")
    return code


def _describe(obj) -> dict:
    if isinstance(obj, SeparatedProductSystem):
        return {"kind": "separated-product", "states": len(obj.states), "properties": obj.lattice.size}
    if isinstance(obj, StatePropertySystem):
        return {"kind": "sps", "states": len(obj.states), "properties": obj.lattice.size}
    return {"kind": "lattice", "elements": obj.size}


def _reports_for(obj):
    if isinstance(obj, SeparatedProductSystem):
        return separated_axiom_report(obj)
    return full_report(obj)


def cmd_check(args, out) -> int:
    doc = parse_spec(Path(args.file))
    obj = build(doc)
    header = {"file": Path(args.file).name, **_describe(obj)}
    return _emit_reports(_reports_for(obj), header, args.format, out)


def cmd_product(args, out) -> int:
    systems = []
    for f in (args.file1, args.file2):
        obj = build(parse_spec(Path(f)))
        if not isinstance(obj, StatePropertySystem):
            raise QlatInputError(f"{f}: product factors must be sps documents")
        systems.append(obj)
    SP = build_separated_product(*systems, extended=args.extended)
    header = {"left": Path(args.file1).name, "right": Path(args.file2).name, **_describe(SP)}
    return _emit_reports(separated_axiom_report(SP), header, args.format, out)


def cmd_gen_hilbert(args, out) -> int:
    doc = parse_spec(Path(args.file))
    if doc.kind != "hilbert-seeds":
        raise QlatInputError(f"{args.file}: expected a hilbert-seeds document, got {doc.kind}")
    L = build_hilbert_lattice(doc)
    ranks = {L.labels[i]: L.payload[i].rank for i in L.elements()}
    header = {"file": Path(args.file).name, "kind": "subspace-lattice", "elements": L.size}
    reports = full_report(L)
    if args.format == "json":
        header["ranks"] = ranks
        header["lattice"] = to_json_value(lattice_document(L))
        return _emit_reports(reports, header, "json", out)
    out.write(f"file: {header['file']}\nkind: subspace-lattice\nelements: {L.size}\n")
    for i in L.elements():
        out.write(f"  {L.labels[i]:<6} rank {ranks[L.labels[i]]}  ortho {L.labels[L.ortho[i]]}\n")
    out.write("hasse:\n")
    for line in L.hasse_lines():
        out.write(f"  {line}\n")
    return _emit_reports(reports, {}, "text", out)


def _unit_projector(n: int):
    rows = [[1 if (i == j == 0) else 0 for j in range(n)] for i in range(n)]
    return exact.qmatrix(rows)


def cmd_demo_epr(args, out) -> int:
    n1, n2 = args.dim
    if n1 < 1 or n2 < 1 or n1 * n2 > 64:
        raise QlatInputError("--dim needs positive sizes with n1*n2 <= 64")
    J = JointMeasurement.from_tensor(_unit_projector(n1), _unit_projector(n2))
    rep = epr_contradiction_demo(J)
    probs = {f"{a},{b}": rep.probabilities[(a, b)] for a, b in sorted(rep.probabilities)}
    if args.format == "json":
        doc = {
            "dims": [n1, n2],
            "probabilities": {k: _json_number(v) for k, v in probs.items()},
            "marginals": {k: _json_number(v) for k, v in rep.marginals.items()},
            "identities": rep.identities,
            "separate": rep.separate,
            "verdict": rep.verdict,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    out.write(f"space: C^{n1} (x) C^{n2}, P1 = |e1><e1| (x) I, P2 = I (x) |e1><e1|\n")
    for k, v in probs.items():
        out.write(f"P({k}) = {_fmt_number(v)}\n")
    out.write("marginals: " + ", ".join(f"{k} = {_fmt_number(v)}" for k, v in rep.marginals.items()) + "\n")
    for k, ok in rep.identities.items():
        out.write(f"  {k}: {'holds' if ok else 'FAILS'}\n")
    out.write(f"verdict: {rep.verdict}\n")
    return EXIT_OK


def cmd_demo_chsh(args, out) -> int:
    a, a2, b, b2 = args.angles
    pairs = {"E(a,b)": (a, b), "E(a,b')": (a, b2), "E(a',b)": (a2, b), "E(a',b')": (a2, b2)}
    values = {k: correlation(SINGLET, *v) for k, v in pairs.items()}
    s = chsh_value(SINGLET, (a, a2, b, b2))
    if args.format == "json":
        doc = {
            "angles": [a, a2, b, b2],
            "correlations": values,
            "S": s,
            "abs_S": abs(s),
            "classical_bound": 2,
            "quantum_bound": 2 * math.sqrt(2),
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    out.write("state: singlet (|01> - |10>)/sqrt2\n")
    out.write("angles: " + " ".join(f"{x:.12g}" for x in (a, a2, b, b2)) + "\n")
    for k, v in values.items():
        out.write(f"{k:<9}= {v:+.12f}\n")
    out.write(f"S = E(a,b) - E(a,b') + E(a',b) + E(a',b') = {s:+.12f}\n")
    out.write(f"|S| = {abs(s):.12f} (local bound 2, quantum bound {2 * math.sqrt(2):.12f})\n")
    return EXIT_OK


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = _parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    handler = {
        "check": cmd_check,
        "product": cmd_product,
        "gen-hilbert": cmd_gen_hilbert,
    }.get(args.command)
    if handler is None:
        handler = cmd_demo_epr if args.demo == "epr" else cmd_demo_chsh
    buf = _stdio.StringIO()
    try:
        code = handler(args, buf)
    except ParseError as exc:
        where = getattr(args, "file", None) or ""
        err.write(f"qlat: {Path(where).name + ':' if where else ''}{exc.line}:{exc.column}: {exc.message}\n")
        return EXIT_INPUT
    except QlatInputError as exc:
        err.write(f"qlat: error: {exc}\n")
        return EXIT_INPUT
    # nothing reaches stdout unless the command completed
    out.write(buf.getvalue())
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
