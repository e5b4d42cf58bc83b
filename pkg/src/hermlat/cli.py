"""Command-line front end.

Subcommands: field, minima, check, fuzz, bounds.  All output is
self-describing structured text with a version field and the effective
configuration in the header; identical (fixture, seed, precision) runs
produce byte-identical output.

Exit codes: 0 all checks passed (or report-only command succeeded),
1 usage or fixture parse error, 2 at least one check failed,
3 uncertified result or exhausted budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bundles import BundleError, PrecisionError
from .duality import (
    DualityError,
    codifferent_covolume,
    dual_minima_comparison,
    minkowski_codifferent_bound,
    minkowski_codifferent_vector,
    trace_module,
    unit_ball_volume,
)
from .fixtures import FixtureError, load_bundle, load_field, load_invariants
from .heights import height_limit, height_lower_bounds, height_upper_bounds
from .minima import DEFAULT_BUDGET, BudgetExhausted, successive_minima
from .numberfield import DEFAULT_PREC_BITS, FieldError, duality_gap_constant, trace_gram
from .reports import fmt, fmt_vec, render_documents, render_header, render_report
from .transference import (
    BundleChecks,
    check_polar_transference,
    check_index_comparison,
    check_proof_chain,
    check_sandwich,
    fuzz,
)

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_UNCERTIFIED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="hermlat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fixture_help):
        sp.add_argument("--fixture", required=True, help=fixture_help)
        sp.add_argument("--precision", type=int, default=DEFAULT_PREC_BITS,
                        help="embedding precision in bits")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("field", help="inspect a field fixture")
    common(sp, "field fixture path")
    sp.add_argument("--cn-max", type=int, default=16, help="largest N in the duality-gap constant table")

    sp = sub.add_parser("minima", help="successive minima of a bundle fixture")
    common(sp, "bundle fixture path")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--mode", choices=["f-rank", "q-rank"], default="f-rank")
    sp.add_argument("--norm", choices=["sup", "sum"], default="sup")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("check", help="run transference checks on a bundle fixture")
    common(sp, "bundle fixture path")
    sp.add_argument(
        "--statement",
        choices=["sandwich", "polar", "index", "chain", "dual-minima", "all"],
        default="all",
    )
    sp.add_argument("--k", type=int, default=None, help="single index; default sweeps all valid k")
    sp.add_argument("--slack", type=float, default=None, help="override the declared slack")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("fuzz", help="seeded randomized sweep of all checkers")
    sp.add_argument("--fields", required=True,
                    help="comma-separated field fixture paths")
    sp.add_argument("--rank-max", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--precision", type=int, default=DEFAULT_PREC_BITS)
    sp.add_argument("--out", default=None)

    sp = sub.add_parser("bounds", help="evaluate the explicit height-bound formulas")
    common(sp, "curve-invariants fixture path")
    sp.add_argument("--d", required=True, help="comma-separated divisor degrees")

    return p


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_field(args) -> int:
    nf = load_field(args.fixture, args.precision)
    tm = trace_module(nf)
    header = render_header(
        "field",
        [
            ("fixture", str(args.fixture)),
            ("precision", str(args.precision)),
        ],
    )
    doc = [
        f"poly: {','.join(str(c) for c in nf.defining_poly)}",
        f"degree: {nf.degree}",
        f"signature: ({nf.r1}, {nf.r2})",
        f"discriminant: {nf.discriminant}",
        f"order: {'Z[theta] (maximality unverified)' if nf.power_basis_order else 'user-supplied basis'}",
    ]
    for i, row in enumerate(trace_gram(nf)):
        doc.append(f"trace_gram[{i}]: " + " ".join(str(x) for x in row))
    for j, c in enumerate(tm.codifferent_basis):
        doc.append(f"codifferent[{j}]: " + " ".join(str(x) for x in c.coords))
    doc.append("metric_weights: " + " ".join(str(int(w)) for w in tm.metric_weights))
    doc.append(f"codifferent_covolume_log: {fmt(codifferent_covolume(nf))}")
    doc.append(f"unit_ball_volume: {fmt(unit_ball_volume(nf))}")
    v, lg = minkowski_codifferent_vector(nf)
    doc.append(f"minkowski_vector: " + " ".join(str(x) for x in v.coords))
    doc.append(f"minkowski_sup_log_norm: {fmt(lg)}")
    doc.append(f"minkowski_bound: {fmt(minkowski_codifferent_bound(nf))}")
    table = ["gap_table: N gap_constant(N, field)"]
    for n in range(1, args.cn_max + 1):
        table.append(f"gap: {n} {fmt(duality_gap_constant(n, nf))}")
    _emit(render_documents(header, [doc, table]), args.out)
    return EXIT_PASS


def _cmd_minima(args) -> int:
    from .bundles import restrict_scalars

    bundle = load_bundle(args.fixture, args.precision)
    lattice = restrict_scalars(bundle)
    profile = successive_minima(lattice, args.k, args.mode, args.norm, args.budget)
    header = render_header(
        "minima",
        [
            ("fixture", str(args.fixture)),
            ("k", str(args.k)),
            ("mode", args.mode),
            ("norm", args.norm),
            ("budget", str(args.budget)),
            ("precision", str(args.precision)),
        ],
    )
    doc = []
    for i, (value, witness) in enumerate(zip(profile.values, profile.witnesses), start=1):
        doc.append(f"minimum {i}: {fmt(value)} witness {fmt_vec(witness.z_coords)}")
    doc.append(f"radius_used: {fmt(profile.radius_used)}")
    doc.append(f"nodes: {profile.nodes}")
    doc.append(f"certified: {'yes' if profile.certified else 'no'}")
    _emit(render_documents(header, [doc]), args.out)
    return EXIT_PASS if profile.certified else EXIT_UNCERTIFIED


def _dual_minima_doc(bundle, k, budget) -> tuple[list[str], str]:
    rep = dual_minima_comparison(bundle, k, budget)
    verdict = "pass" if rep.holds else ("uncertified" if not rep.certified else "fail")
    doc = [
        f"statement: dual-minima[k={k}]",
        f"mu_dual_bundle: {fmt(rep.mu_dual_bundle)}",
        f"mu_trace_dual: {fmt(rep.mu_trace_dual)}",
        f"transfer_log_norm: {fmt(rep.transfer_log_norm)}",
        f"minkowski_log_norm: {fmt(rep.minkowski_log_norm)}",
        f"minkowski_bound: {fmt(rep.minkowski_bound)}",
        f"verdict: {verdict}",
    ]
    return doc, verdict


def _cmd_check(args) -> int:
    bundle = load_bundle(args.fixture, args.precision)
    n, r = bundle.rank, bundle.nf.degree
    ctx = BundleChecks(bundle, args.budget)
    docs = []
    verdicts = []

    def run(fn, ks, **kw):
        for k in ks:
            rep = fn(ctx, k, **kw) if kw else fn(ctx, k)
            docs.append(render_report(rep))
            verdicts.append(rep.verdict)

    ks = lambda lo, hi: [args.k] if args.k is not None else list(range(lo, hi + 1))
    slack = {} if args.slack is None else {"slack": args.slack}
    statement = args.statement
    if statement in ("sandwich", "all"):
        run(check_sandwich, ks(1, n), **slack)
    if statement in ("polar", "all"):
        run(check_polar_transference, ks(1, n * r), **slack)
    if statement in ("index", "all"):
        run(check_index_comparison, ks(0, n - 1), **slack)
    if statement in ("chain", "all"):
        run(check_proof_chain, ks(1, n))
    if statement in ("dual-minima", "all"):
        for k in ks(1, n):
            doc, verdict = _dual_minima_doc(bundle, k, args.budget)
            docs.append(doc)
            verdicts.append(verdict)

    header = render_header(
        "check",
        [
            ("fixture", str(args.fixture)),
            ("statement", statement),
            ("k", "all" if args.k is None else str(args.k)),
            ("slack", "default" if args.slack is None else fmt(args.slack)),
            ("budget", str(args.budget)),
            ("precision", str(args.precision)),
        ],
    )
    _emit(render_documents(header, docs), args.out)
    if any(v == "fail" for v in verdicts):
        return EXIT_FAIL
    if any(v == "uncertified" for v in verdicts):
        return EXIT_UNCERTIFIED
    return EXIT_PASS


def _cmd_fuzz(args) -> int:
    fields = [load_field(p.strip(), args.precision) for p in args.fields.split(",")]
    reports = fuzz(fields, args.rank_max, args.trials, args.seed, args.budget)
    header = render_header(
        "fuzz",
        [
            ("fields", args.fields),
            ("rank_max", str(args.rank_max)),
            ("trials", str(args.trials)),
            ("seed", str(args.seed)),
            ("budget", str(args.budget)),
            ("precision", str(args.precision)),
        ],
    )
    counts = {"pass": 0, "fail": 0, "uncertified": 0}
    for rep in reports:
        counts[rep.verdict] += 1
    summary = [
        f"reports: {len(reports)}",
        f"pass: {counts['pass']}",
        f"fail: {counts['fail']}",
        f"uncertified: {counts['uncertified']}",
    ]
    docs = [summary]
    docs.extend(render_report(rep) for rep in reports)
    _emit(render_documents(header, docs), args.out)
    if counts["fail"]:
        return EXIT_FAIL
    if counts["uncertified"]:
        return EXIT_UNCERTIFIED
    return EXIT_PASS


def _cmd_bounds(args) -> int:
    inv = load_invariants(args.fixture)
    try:
        degrees = [int(x) for x in args.d.split(",") if x.strip()]
    except ValueError:
        raise FixtureError(f"--d must be a comma-separated integer list, got {args.d!r}") from None
    if not degrees or any(d < 1 for d in degrees):
        raise FixtureError("--d needs positive integers")
    header = render_header(
        "bounds",
        [
            ("fixture", str(args.fixture)),
            ("g", str(inv.g)),
            ("r", str(inv.r)),
            ("log_disc", fmt(inv.log_disc)),
            ("omega_sq", fmt(float(inv.omega_sq))),
            ("residual_C", fmt(inv.residual_c)),
            ("residual_note", "bounds carry -/+ residual_C*log(d)/d with the configured constant"),
        ],
    )
    limit = height_limit(float(inv.omega_sq), 2 * inv.g - 2)
    rows = ["columns: d|lower_a|lower_b|upper_a|upper_b|limit"]
    for d in degrees:
        la, lb = height_lower_bounds(inv, d)
        ua, ub = height_upper_bounds(inv, d)
        rows.append(
            "|".join(
                [
                    str(d),
                    fmt(float(la)),
                    "" if lb is None else fmt(float(lb)),
                    fmt(float(ua)),
                    "" if ub is None else fmt(float(ub)),
                    fmt(limit),
                ]
            )
        )
    _emit(render_documents(header, [rows]), args.out)
    return EXIT_PASS


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0,) else 0
    try:
        if args.command == "field":
            return _cmd_field(args)
        if args.command == "minima":
            return _cmd_minima(args)
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "fuzz":
            return _cmd_fuzz(args)
        if args.command == "bounds":
            return _cmd_bounds(args)
        return EXIT_USAGE
    except (FixtureError, FieldError, BundleError, OSError, ValueError) as e:
        sys.stderr.write(f"hermlat: {e}\n")
        return EXIT_USAGE
    except BudgetExhausted as e:
        sys.stderr.write(f"hermlat: {e}\n")
        return EXIT_UNCERTIFIED
    except (PrecisionError, DualityError) as e:
        sys.stderr.write(f"hermlat: {e}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
