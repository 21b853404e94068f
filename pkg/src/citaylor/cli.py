"""Command line front end.

Subcommands: taylor, resolve, verify, betti, export-dot, check-exactness.
Exit codes: 0 success, 1 a verification reported failure, 2 bad input,
3 a computation cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .homotopy import (
    HomotopySystem,
    complete_intersection,
    lift_matrix,
    lift_matrix_from_rows,
    parse_assignments,
    verify_homotopy_system,
)
from .matrix import LabeledGradedMatrix
from .poly import QQ, ParseError, PolyRing, PrimeField
from .quotient import BadPrime, CapExceeded, check_exactness
from .shamash import betti_bound, phi_squared_check, shamash_resolution
from .taylor import monomial_ideal, taylor_complex, verify_taylor

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_CAP = 3

EDGE_COLORS = ("red", "orange", "purple", "brown", "cyan4", "magenta")


# ---- text rendering ------------------------------------------------------


def label_text(label):
    return label.compact() if hasattr(label, "compact") else str(label)


def matrix_text(mat, name):
    cols = [label_text(c) for c in mat.cols]
    rows = [label_text(r) for r in mat.rows]
    cells = [[str(mat.entry(i, j)) for j in range(len(mat.cols))] for i in range(len(mat.rows))]
    widths = [
        max([len(cols[j])] + [len(cells[i][j]) for i in range(len(mat.rows))])
        for j in range(len(mat.cols))
    ]
    row_width = max((len(r) for r in rows), default=0)

    def fmt(values):
        parts = []
        for j, v in enumerate(values):
            if j in mat.col_dividers:
                parts.append("|")
            parts.append(v.rjust(widths[j]))
        return "  ".join(parts)

    lines = [f"{name}:"]
    lines.append(" " * (row_width + 5) + fmt(cols))
    body = [f"  {rows[i].rjust(row_width)} [ {fmt(cells[i])} ]" for i in range(len(rows))]
    rule = "  " + "-" * (len(body[0]) - 2) if body else ""
    for i, line in enumerate(body):
        if i in mat.row_dividers:
            lines.append(rule)
        lines.append(line)
    return "\n".join(lines)


def module_text(basis):
    if not basis:
        return "0"
    runs = []
    for b in basis:
        if runs and runs[-1][0] == b.twist:
            runs[-1][1] += 1
        else:
            runs.append([b.twist, 1])
    parts = []
    for twist, count in runs:
        base = "R" if twist == 0 else f"R(-{twist})"
        parts.append(base if count == 1 else f"{base}^{count}")
    return " (+) ".join(parts)


def ring_text(ring):
    return f"{ring.field}[{','.join(ring.variables)}]"


def minimality_text(report):
    if report.minimal:
        return ["minimality: minimal (every entry lies in the maximal ideal)"]
    return ["minimality: NOT minimal"] + [f"  {line}" for line in report.describe()]


def periodicity_text(info):
    if info.status == "periodic":
        return f"periodicity: tail repeats with period 2 from step {info.start}"
    if info.status == "none":
        return "periodicity: no shift-stable tail inside the computed window"
    return "periodicity: not applicable (sequence length != 1)"


def taylor_text(cx):
    ideal = cx.ideal
    lines = [
        f"taylor complex of <{', '.join(ideal.ring.format_monomial(m) for m in ideal.generators)}>"
        f" over {ring_text(ideal.ring)}",
        "",
    ]
    for k in range(ideal.ngens + 1):
        lines.append(f"T_{k} = {module_text(cx.basis(k))}")
    for k in range(1, ideal.ngens + 1):
        lines.append("")
        lines.append(matrix_text(cx.differential(k), f"tau_{k}"))
    return "\n".join(lines) + "\n"


def resolution_text(res):
    system = res.system
    ci = system.ci
    ring = system.ring
    gens = ", ".join(ring.format_monomial(m) for m in ci.ideal.generators)
    lines = [
        f"resolution over {ring_text(ring)} / ({', '.join(str(a) for a in ci.sequence)})",
        f"ideal: {gens}",
        f"sequence degrees: {', '.join(str(d) for d in ci.degrees)}",
        "lift rows (columns follow the generators):",
    ]
    for i, row in enumerate(system.lift.rows, start=1):
        lines.append(f"  f[{i}] = [{', '.join(str(p) for p in row)}]")
    lines.append("")
    for n in range(res.max_step + 1):
        lines.append(f"F_{n} = {module_text(res.basis(n))}")
    for n in range(1, res.max_step + 1):
        lines.append("")
        lines.append(matrix_text(res.differential(n), f"phi_{n}"))
    lines.append("")
    lines.extend(minimality_text(res.minimality))
    lines.append(periodicity_text(res.periodicity))
    return "\n".join(lines) + "\n"


# ---- json ----------------------------------------------------------------


def ring_json(ring):
    return {"vars": list(ring.variables), "char": ring.field.characteristic}


def basis_element_json(b):
    return {"u": list(b.u.exponents), "S": list(b.label.indices), "twist": b.twist}


def subset_json(label):
    return {"u": [], "S": list(label.indices), "twist": label.degree}


def matrix_json(mat, step):
    return {
        "from": step,
        "to": step - 1,
        "entries": [
            {"row": i, "col": j, "poly": str(mat.entries[(i, j)])}
            for i, j in sorted(mat.entries)
        ],
    }


def report_json(report):
    return {"passed": report.passed, "details": report.details, "failure": report.failure}


def resolution_json(res, extra_reports=None):
    system = res.system
    ci = system.ci
    reports = {
        "minimality": {
            "minimal": res.minimality.minimal,
            "witnesses": res.minimality.describe() if not res.minimality.minimal else [],
        },
        "periodicity": {"status": res.periodicity.status, "start": res.periodicity.start},
    }
    if extra_reports:
        reports.update(extra_reports)
    return {
        "ring": ring_json(system.ring),
        "ideal": [system.ring.format_monomial(m) for m in ci.ideal.generators],
        "ci": [str(a) for a in ci.sequence],
        "lift": [[str(p) for p in row] for row in system.lift.rows],
        "modules": [[basis_element_json(b) for b in res.basis(n)] for n in range(res.max_step + 1)],
        "differentials": [matrix_json(res.differential(n), n) for n in range(1, res.max_step + 1)],
        "reports": reports,
    }


def resolution_from_json(doc):
    """Rebuild the resolution and cross-check it against the stored data."""
    char = doc["ring"]["char"]
    field = QQ if char == 0 else PrimeField(char)
    ring = PolyRing(tuple(doc["ring"]["vars"]), field)
    ideal = monomial_ideal(ring, doc["ideal"])
    ci = complete_intersection(ideal, doc["ci"])
    rows = [[ring.parse(s) for s in row] for row in doc["lift"]]
    system = HomotopySystem(ci, lift_matrix_from_rows(ci, rows))
    res = shamash_resolution(system, len(doc["modules"]) - 1)
    for n, module in enumerate(doc["modules"]):
        stored = [(tuple(e["u"]), tuple(e["S"]), e["twist"]) for e in module]
        computed = [(b.u.exponents, b.label.indices, b.twist) for b in res.basis(n)]
        if stored != computed:
            raise ValueError(f"stored basis at step {n} does not match the data")
    for dmat in doc["differentials"]:
        mat = res.differential(dmat["from"])
        stored = {(e["row"], e["col"]): ring.parse(e["poly"]) for e in dmat["entries"]}
        if stored != mat.entries:
            raise ValueError(f"stored differential {dmat['from']} does not match the data")
    return res


def taylor_json(cx):
    ideal = cx.ideal
    return {
        "ring": ring_json(ideal.ring),
        "ideal": [ideal.ring.format_monomial(m) for m in ideal.generators],
        "ci": [],
        "modules": [[subset_json(b) for b in cx.basis(k)] for k in range(ideal.ngens + 1)],
        "differentials": [
            matrix_json(cx.differential(k), k) for k in range(1, ideal.ngens + 1)
        ],
        "reports": {},
    }


# ---- latex ---------------------------------------------------------------


def _name_tex(name):
    head = name.rstrip("0123456789")
    if head != name and head:
        return f"{head}_{{{name[len(head):]}}}"
    return name


def poly_tex(poly):
    ring = poly.ring
    if not poly.terms:
        return "0"
    pieces = []
    for e in poly.sorted_exponents():
        c = poly.terms[e]
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        mono = "".join(
            _name_tex(v) + (f"^{{{k}}}" if k > 1 else "")
            for v, k in zip(ring.variables, e)
            if k
        )
        if isinstance(mag, Fraction) and mag.denominator != 1:
            coeff = rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
        else:
            coeff = str(mag)
        if not mono:
            body = coeff
        elif mag == ring.field.one:
            body = mono
        else:
            body = coeff + mono
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = [body if sign == "+" else f"-{body}"]
    for sign, body in pieces[1:]:
        out.append(f" {sign} {body}")
    return "".join(out)


def label_tex(label):
    text = label_text(label)
    if text == "{}":
        return r"\emptyset"
    return text.replace("*", r" \cdot ").replace("y(", "y^{(").replace(")", ")}")


def matrix_tex(mat, name):
    colspec = []
    for j in range(len(mat.cols)):
        if j in mat.col_dividers:
            colspec.append("|")
        colspec.append("r")
    lines = [rf"% {name}", r"\[", f"{name} = ", r"\begin{array}{c|" + "".join(colspec) + "}"]
    header = " & ".join([""] + [label_tex(c) for c in mat.cols])
    lines.append(header + r" \\ \hline")
    for i in range(len(mat.rows)):
        if i in mat.row_dividers:
            lines.append(r"\hline")
        cells = [poly_tex(mat.entry(i, j)) for j in range(len(mat.cols))]
        lines.append(" & ".join([label_tex(mat.rows[i])] + cells) + r" \\")
    lines.append(r"\end{array}")
    lines.append(r"\]")
    return "\n".join(lines)


def resolution_tex(res):
    parts = []
    mods = " \\to ".join(
        f"F_{{{n}}}" for n in range(res.max_step, -1, -1)
    )
    parts.append(f"% {mods}")
    for n in range(res.max_step + 1):
        parts.append(f"% F_{n} = {module_text(res.basis(n))}")
    for n in range(1, res.max_step + 1):
        parts.append(matrix_tex(res.differential(n), rf"\varphi_{{{n}}}"))
    return "\n".join(parts) + "\n"


def taylor_tex(cx):
    parts = [f"% T_{k} = {module_text(cx.basis(k))}" for k in range(cx.ideal.ngens + 1)]
    for k in range(1, cx.ideal.ngens + 1):
        parts.append(matrix_tex(cx.differential(k), rf"\tau_{{{k}}}"))
    return "\n".join(parts) + "\n"


# ---- dot -----------------------------------------------------------------


def dot_text(ideal, system=None):
    cx = system.complex if system is not None else taylor_complex(ideal)
    r = ideal.ngens
    lines = ["digraph resolution {", "  rankdir=LR;"]
    even, odd = [], []
    for k in range(r + 1):
        for lab in cx.basis(k):
            (even if k % 2 == 0 else odd).append(lab)
    for group in (even, odd):
        names = "; ".join(f'"{label_text(b)}"' for b in group)
        lines.append(f"  {{ rank=same; {names}; }}")
    for k in range(1, r + 1):
        tau = cx.differential(k)
        for (i, j), p in sorted(tau.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(
                f'  "{label_text(tau.cols[j])}" -> "{label_text(tau.rows[i])}"'
                f' [color=blue, label="{p}"];'
            )
    if system is not None:
        for i in range(1, system.ci.codim + 1):
            color = EDGE_COLORS[(i - 1) % len(EDGE_COLORS)]
            for k in range(0, r):
                sig = system.sigma_e(i, k)
                for (ri, j), p in sorted(sig.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
                    lines.append(
                        f'  "{label_text(sig.cols[j])}" -> "{label_text(sig.rows[ri])}"'
                        f' [color={color}, label="{p}"];'
                    )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---- argument plumbing ---------------------------------------------------


def build_ring(args):
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if args.char == 0:
        field = QQ
    else:
        try:
            field = PrimeField(args.char)
        except ValueError as exc:
            raise ValueError(f"--char: {exc}") from None
    return PolyRing(names, field)


def build_ideal(args, ring):
    gens = [g.strip() for g in args.ideal.split(",") if g.strip()]
    if not gens:
        raise ValueError("--ideal needs at least one generator")
    return monomial_ideal(ring, gens)


def build_ci(args, ideal):
    elements = [a.strip() for a in args.ci.split(",") if a.strip()]
    if not elements:
        raise ValueError("--ci needs at least one element")
    return complete_intersection(ideal, elements)


def build_lift(args, ci):
    spec = args.lift
    if spec == "first":
        return lift_matrix(ci, "first")
    if spec == "average":
        return lift_matrix(ci, "average")
    if spec.startswith("file:"):
        path = spec[len("file:") :]
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        docs = doc if isinstance(doc, list) else [doc]
        if len(docs) != ci.codim:
            raise ValueError(
                f"lift file provides {len(docs)} assignment rows, sequence has {ci.codim}"
            )
        try:
            maps = [parse_assignments(ci.ring, d) for d in docs]
        except KeyError as exc:
            raise ValueError(f"lift file is missing key {exc}") from None
        return lift_matrix(ci, "fixed-assignment", maps)
    raise ValueError(f"--lift must be first, average, or file:PATH (got {spec!r})")


def emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(doc):
    return json.dumps(doc, indent=2) + "\n"


# ---- commands ------------------------------------------------------------


def cmd_taylor(args):
    ring = build_ring(args)
    ideal = build_ideal(args, ring)
    cx = taylor_complex(ideal)
    if args.format == "json":
        emit(args, _dump(taylor_json(cx)))
    elif args.format == "tex":
        emit(args, taylor_tex(cx))
    elif args.format == "dot":
        emit(args, dot_text(ideal))
    else:
        emit(args, taylor_text(cx))
    return EXIT_OK


def _build_resolution(args):
    ring = build_ring(args)
    ideal = build_ideal(args, ring)
    ci = build_ci(args, ideal)
    system = HomotopySystem(ci, build_lift(args, ci))
    return shamash_resolution(system, args.max_step)


def cmd_resolve(args):
    res = _build_resolution(args)
    if args.format == "json":
        emit(args, _dump(resolution_json(res)))
    elif args.format == "tex":
        emit(args, resolution_tex(res))
    elif args.format == "dot":
        emit(args, dot_text(res.system.ideal, res.system))
    else:
        emit(args, resolution_text(res))
    return EXIT_OK


def cmd_verify(args):
    res = _build_resolution(args)
    system = res.system
    reports = [
        verify_taylor(system.ideal),
        verify_homotopy_system(system),
        phi_squared_check(res),
    ]
    if args.max_degree is not None:
        prime = args.char if args.char else 32003
        for n in range(1, res.max_step):
            reports.append(check_exactness(res, n, args.max_degree, prime))
    passed = all(r.passed for r in reports)
    if args.format == "json":
        doc = resolution_json(res, {r.title: report_json(r) for r in reports})
        emit(args, _dump(doc))
    else:
        out = []
        for r in reports:
            out.append(r.summary())
        out.append("overall: " + ("PASS" if passed else "FAIL"))
        emit(args, "\n".join(out) + "\n")
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_betti(args):
    bounds = [
        betti_bound(args.gens, args.codim, n // 2, n % 2) for n in range(args.max_step + 1)
    ]
    if args.format == "json":
        emit(args, _dump({"r": args.gens, "c": args.codim, "bounds": bounds}))
    else:
        lines = [
            f"betti number bounds: r={args.gens} generators, sequence length c={args.codim}",
            "  n  bound",
        ]
        for n, b in enumerate(bounds):
            lines.append(f"{n:>3}  {b}")
        emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_export_dot(args):
    ring = build_ring(args)
    ideal = build_ideal(args, ring)
    system = None
    if args.ci:
        ci = build_ci(args, ideal)
        system = HomotopySystem(ci, build_lift(args, ci))
    emit(args, dot_text(ideal, system))
    return EXIT_OK


def cmd_check_exactness(args):
    res = _build_resolution(args)
    if res.max_step < 2:
        raise ValueError("--max-step must be at least 2 so one window exists")
    prime = args.char if args.char else 32003
    reports = [
        check_exactness(res, n, args.max_degree, prime) for n in range(1, res.max_step)
    ]
    passed = all(r.passed for r in reports)
    if args.format == "json":
        doc = resolution_json(res, {r.title: report_json(r) for r in reports})
        emit(args, _dump(doc))
    else:
        out = [r.summary() for r in reports]
        out.append("overall: " + ("PASS" if passed else "FAIL"))
        emit(args, "\n".join(out) + "\n")
    return EXIT_OK if passed else EXIT_VERIFY


# ---- parser --------------------------------------------------------------


def _add_ring_arguments(sp, with_ideal=True):
    sp.add_argument("--vars", required=True, help="comma-separated variable names")
    sp.add_argument(
        "--char", type=int, default=0, help="coefficient characteristic: 0 (default) or a prime"
    )
    if with_ideal:
        sp.add_argument(
            "--ideal", required=True, help="comma-separated monomial generators, e.g. 'x*y,x*z'"
        )


def _add_format_argument(sp, choices=("text", "json", "tex", "dot")):
    sp.add_argument("--format", choices=choices, default="text")
    sp.add_argument("--out", help="write output to this file instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="citaylor",
        description=(
            "Taylor resolutions of monomial ideals, explicit homotopies for a "
            "regular sequence, and resolutions over the quotient."
        ),
        epilog=(
            "Lift files for --lift file:PATH contain "
            '{"assignments": [{"term": "x^2*z", "gen": 1}, ...]} '
            "(a JSON list of such objects when the sequence has length > 1). "
            "CITAYLOR_SEED fixes the randomness of the property-test helpers."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("taylor", help="build and print the Taylor complex")
    _add_ring_arguments(sp)
    _add_format_argument(sp)
    sp.set_defaults(func=cmd_taylor)

    sp = sub.add_parser("resolve", help="assemble the resolution over the quotient")
    _add_ring_arguments(sp)
    sp.add_argument("--ci", required=True, help="comma-separated sequence elements")
    sp.add_argument("--lift", default="first", help="first | average | file:PATH")
    sp.add_argument("--max-step", type=int, required=True, help="resolve up to F_N")
    _add_format_argument(sp)
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("verify", help="check every defining identity exactly")
    _add_ring_arguments(sp)
    sp.add_argument("--ci", required=True)
    sp.add_argument("--lift", default="first")
    sp.add_argument("--max-step", type=int, default=6)
    sp.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="also check graded exactness up to this internal degree",
    )
    _add_format_argument(sp, choices=("text", "json"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("betti", help="rank bounds from the closed formula")
    sp.add_argument("--gens", type=int, required=True, help="number of ideal generators r")
    sp.add_argument("--codim", type=int, required=True, help="sequence length c")
    sp.add_argument("--max-step", type=int, default=10)
    _add_format_argument(sp, choices=("text", "json"))
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("export-dot", help="divisibility graph with homotopy edges")
    _add_ring_arguments(sp)
    sp.add_argument("--ci", default=None, help="optional sequence: adds homotopy edges")
    sp.add_argument("--lift", default="first")
    sp.add_argument("--out", help="write output to this file instead of stdout")
    sp.set_defaults(func=cmd_export_dot)

    sp = sub.add_parser("check-exactness", help="graded homology vanishing over GF(p)")
    _add_ring_arguments(sp)
    sp.add_argument("--ci", required=True)
    sp.add_argument("--lift", default="first")
    sp.add_argument("--max-step", type=int, required=True)
    sp.add_argument("--max-degree", type=int, default=10)
    _add_format_argument(sp, choices=("text", "json"))
    sp.set_defaults(func=cmd_check_exactness)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, BadPrime, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
