"""Command-line surface: end-to-end verification pipelines over the text
fixtures.

Exit codes: 0 when every checked identity holds, 1 when a verification is
violated, 2 on malformed or inapplicable input.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import characters, flag, io, morse, polytope, toric
from .ratfun import RationalFunction


def _default_order(dim: int) -> int:
    return 2 * dim + 10


def _fan_and_table(P, linear, lsop_rows=None):
    fan = P.normal_fan()
    auto = toric.FanAutomorphism.from_involution_dual(fan, linear)
    trace = toric.graded_trace(fan, auto, lsop_rows)
    return fan, trace, toric.signed_betti(trace)


def cmd_stats(args, report: io.RunReport):
    P = io.load_polytope(args.polytope)
    report.add_input_file("polytope", args.polytope)
    report.add_row("stats", "dim", P.dim, "-", True)
    report.add_row("stats", "f_vector", P.f_vector(), "-", True)
    simple = P.is_simple()
    report.add_row("stats", "simple", simple, "-", True)
    if simple:
        report.add_row("stats", "h_vector", P.h_vector(), "-", True)
    center = P.central_symmetry_center()
    report.add_row(
        "stats",
        "centrally_symmetric",
        center is not None,
        tuple(map(str, center)) if center is not None else "-",
        True,
    )


def cmd_verify_stanley(args, report: io.RunReport):
    P = io.load_polytope(args.polytope)
    report.add_input_file("polytope", args.polytope)
    center = P.central_symmetry_center()
    if center is None:
        raise polytope.PolytopeError("polytope is not centrally symmetric")
    if not P.is_simple():
        raise polytope.NotSimpleError("polytope is not simple")
    P0 = P.translate([-c for c in center])
    _, trace, table = _fan_and_table(
        P0, polytope.AffineInvolution.negation(P.dim).linear
    )
    hvec = P0.h_vector()
    if tuple(trace.dims) != hvec:
        raise toric.IncompleteFanError(
            f"cohomology dimensions {trace.dims} disagree with the h-vector {hvec}"
        )
    result = characters.stanley_check(table, P.dim)
    for degree, lhs, rhs, ok in result.rows:
        report.add_row("stanley", f"deg {degree}", lhs, rhs, ok)
    chi = characters.chi_from_manifold(table, P.dim)
    chi_ok = chi.value == RationalFunction.one()
    report.add_row("stanley", "chi(k=n)", chi, 1, chi_ok)
    report.verdict = "HOLDS" if result.holds and chi_ok else "VIOLATED"


def _reduction_pipeline(args, report: io.RunReport):
    P = io.load_polytope(args.polytope)
    invol = io.load_involution(args.involution)
    sub = io.load_subtorus(args.subtorus)
    report.add_input_file("polytope", args.polytope)
    report.add_input_file("involution", args.involution)
    report.add_input_file("subtorus", args.subtorus)
    Q, iota, basis = polytope.slice_reduce(P, invol, sub)
    return P, invol, sub, Q, iota, basis


def cmd_reduce(args, report: io.RunReport):
    P, invol, sub, Q, iota, basis = _reduction_pipeline(args, report)
    report.add_row("reduce", "slice_dim", Q.dim, "-", True)
    report.add_row("reduce", "slice_f_vector", Q.f_vector(), "-", True)
    report.add_row("reduce", "slice_simple", Q.is_simple(), "-", True)
    for i, row in enumerate(basis):
        report.add_row("reduce", f"basis[{i}]", row, "-", True)
    for i, (a, b) in enumerate(zip(Q.normals, Q.offsets)):
        report.add_row("reduce", f"facet[{i}]", tuple(map(str, a)), b, True)
    for i, row in enumerate(iota.linear):
        report.add_row("reduce", f"involution[{i}]", tuple(map(str, row)), "-", True)
    report.add_row("reduce", "involution_shift", tuple(map(str, iota.translation)), "-", True)


def cmd_verify_main(args, report: io.RunReport):
    P, invol, sub, Q, iota, basis = _reduction_pipeline(args, report)
    order = args.expand_order or _default_order(P.dim)
    _, _, table = _fan_and_table(P, invol.linear)
    _, _, table0 = _fan_and_table(Q, iota.linear)
    result = characters.verify_main_identity(table, table0, sub.rank, expand_order=order)
    for degree, lhs, rhs, ok in result.rows:
        report.add_row("main", f"deg {degree}", lhs, rhs, ok)
    report.add_row("main", "chi_manifold", result.chi_manifold, result.chi_reduction, result.chi_equal)
    report.note(f"manifold signed diffs: {[table.diff(i) for i in range(table.top_degree + 1)]}")
    report.note(f"reduction signed diffs: {[table0.diff(i) for i in range(table0.top_degree + 1)]}")
    report.verdict = result.verdict


def cmd_trace(args, report: io.RunReport):
    fan = io.load_fan(args.fan)
    auto = io.load_automorphism(args.automorphism, fan)
    report.add_input_file("fan", args.fan)
    report.add_input_file("automorphism", args.automorphism)
    trace = toric.graded_trace(fan, auto)
    for i, (t, d) in enumerate(zip(trace.traces, trace.dims)):
        report.add_row("trace", f"H^{2 * i}", t, d, True)
    table = toric.signed_betti(trace)
    report.note(f"signed poly: {table.signed_poly()}")


def cmd_morse(args, report: io.RunReport):
    if args.polytope:
        P = io.load_polytope(args.polytope)
        report.add_input_file("polytope", args.polytope)
        center = P.central_symmetry_center()
        if center is None:
            raise morse.NotCentrallySymmetricError("polytope is not centrally symmetric")
        P0 = P.translate([-c for c in center])
        zero, comps = morse.full_torus_critical_data(P0)
        k = P.dim
        _, _, table = _fan_and_table(P0, polytope.AffineInvolution.negation(P.dim).linear)
        dim_hint = P.dim
    else:
        zero, comps = io.load_critical_data(args.crit)
        table = io.load_betti_table(args.betti)
        report.add_input_file("critical_data", args.crit)
        report.add_input_file("betti", args.betti)
        k = args.k
        if k is None:
            raise io.ParseError("--k is required with --crit")
        dim_hint = table.top_degree // 2
    report.add_param("k", k)
    order = args.expand_order or _default_order(dim_hint)
    result = morse.perfection_check(zero, comps, table, k, expand_order=order)
    for row in result.rows:
        report.add_row(
            "morse",
            row.rho.value,
            row.counting,
            row.target,
            row.ok,
        )
        if not row.ok:
            report.note(f"residue[{row.rho.value}] = {row.residue} ({row.classification})")
    report.note(f"chi from counting series: {result.chi_theta}")
    report.verdict = result.verdict


def cmd_flag(args, report: io.RunReport):
    if args.spec:
        spec = _load_flag_spec(args.spec)
        report.add_input_file("spec", args.spec)
    else:
        if args.n is None:
            raise io.ParseError("flag needs n or --spec")
        spec = flag.FlagSpec(
            args.n,
            _parse_list(args.spectrum) if args.spectrum else None,
            _parse_list(args.weights) if args.weights else None,
        )
        report.add_param("n", spec.n)
    if not flag.check_moment_compat(spec):
        raise ValueError("moment map compatibility check failed")
    trace = flag.theta_trace(spec.n)
    table = toric.signed_betti(trace)
    for i, (t, d) in enumerate(zip(trace.traces, trace.dims)):
        report.add_row("flag", f"H^{2 * i}", t, d, True)
    chi = characters.chi_from_manifold(table, 1)
    prediction = flag.predict_reduction_signature(spec.n)
    chi_ok = chi.value == RationalFunction(prediction)
    report.add_row("flag", "trace_poly", trace.trace_polynomial(), "-", True)
    report.add_row("flag", "chi", chi, prediction, chi_ok)
    report.note(f"predicted reduction signature (labelled prediction): {prediction}")
    if not chi_ok:
        report.verdict = "VIOLATED"


def _parse_list(text: str):
    return [Fraction(tok) for tok in text.replace(",", " ").split()]


def _load_flag_spec(path) -> flag.FlagSpec:
    n = None
    spectrum = None
    weights = None
    for line in io._data_lines(path):
        toks = line.split()
        if toks[0] == "n":
            n = int(toks[1])
        elif toks[0] == "spectrum":
            spectrum = [Fraction(t) for t in toks[1:]]
        elif toks[0] == "weights":
            weights = [Fraction(t) for t in toks[1:]]
        else:
            raise io.ParseError(f"{path}: unknown flag spec field {toks[0]!r}")
    if n is None:
        raise io.ParseError(f"{path}: missing 'n'")
    return flag.FlagSpec(n, spectrum, weights)


_HANDLERS = {
    "stats": cmd_stats,
    "verify-stanley": cmd_verify_stanley,
    "verify-main": cmd_verify_main,
    "reduce": cmd_reduce,
    "trace": cmd_trace,
    "morse": cmd_morse,
    "flag": cmd_flag,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtoric",
        description="Exact verification of involution characters on toric data, "
        "reduction identities, and Morse counting series.",
    )
    parser.add_argument("--report", metavar="PATH", help="write a machine-readable TSV report")
    parser.add_argument(
        "--expand-order",
        type=int,
        default=None,
        metavar="N",
        help="series cross-check depth (default 2*dim+10)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="f/h-vectors, simplicity, symmetry of a polytope")
    p.add_argument("polytope")

    p = sub.add_parser("verify-stanley", help="signed Betti differences of a symmetric toric input")
    p.add_argument("polytope")

    for name, help_text in (
        ("verify-main", "manifold vs reduction signed Betti identity"),
        ("reduce", "slice a polytope by the fixed level of a subtorus"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("polytope")
        p.add_argument("involution")
        p.add_argument("subtorus")

    p = sub.add_parser("trace", help="graded trace of a fan automorphism")
    p.add_argument("fan")
    p.add_argument("automorphism")

    p = sub.add_parser("morse", help="Morse counting series perfection for all coefficient systems")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--polytope", help="symmetric simple polytope; critical data is derived")
    group.add_argument("--crit", help="declarative critical data file")
    p.add_argument("--betti", help="signed Betti table of the manifold (with --crit)")
    p.add_argument("--k", type=int, default=None, help="torus rank (with --crit)")

    p = sub.add_parser("flag", help="flag manifold trace, character, and reduction prediction")
    p.add_argument("n", type=int, nargs="?", default=None)
    p.add_argument("--spec", help="flag spec file (alternative to n)")
    p.add_argument("--spectrum", help="comma or space separated spectrum entries")
    p.add_argument("--weights", help="comma or space separated circle weights")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = io.RunReport(command=args.command)
    started = time.perf_counter()
    try:
        if args.command == "morse" and args.crit and not args.betti:
            raise io.ParseError("--betti is required with --crit")
        _HANDLERS[args.command](args, report)
    except Exception as exc:  # input or precondition failure: exit 2
        report.verdict = "ERROR"
        report.note(f"{type(exc).__name__}: {exc}")
    report.timings["total"] = time.perf_counter() - started
    print(report.human())
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.to_tsv())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
