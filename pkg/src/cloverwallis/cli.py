"""Command-line interface.

    cloverwallis varpi --m 4 --method all
    cloverwallis product --m 2 --terms 1 --exact
    cloverwallis clover --m 2 --eval 1.5707963268
    cloverwallis clover --m 4 --render --all-leaves --format svg --out lemniscate.svg
    cloverwallis moments --m 3 --n 5
    cloverwallis verify --m-range 1-6 --n-range 0-12
    cloverwallis report --m 2 --checkpoints 1000,10000,100000 --format csv --plot conv.png

Exit status: 0 when every requested computation met its tolerance, 1 when a
computation failed or missed its tolerance, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import clover, moments, wallis
from .quadrature import QuadratureError
from .render import CURVE_CSV_HEADER, curve_csv, curve_svg
from .verification import run_verification

FORMATS = ("human", "json", "csv", "svg")
DEFAULT_TOL = 1e-9
DEFAULT_CHECKPOINTS = "1000,10000,100000"


class CommandError(Exception):
    """Computation failed or missed its tolerance (exit 1)."""


class UsageError(Exception):
    """Invalid combination of arguments (exit 2)."""


def fraction_str(value: Fraction | None) -> str | None:
    """``"p/q"``, or ``"p"`` for integers; exact rationals never pass through floats."""
    if value is None:
        return None
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class Output:
    """Payload of one command in all of its textual forms."""

    def __init__(self, payload: dict, header=(), rows=(), human: str = "", ok: bool = True,
                 error: str | None = None):
        self.payload = payload
        self.error = error
        self.header = tuple(header)
        self.rows = [tuple(r) for r in rows]
        self.human = human
        self.ok = ok

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\r\n")
            writer.writerow(self.header)
            writer.writerows(self.rows)
            return buf.getvalue()
        return self.human.rstrip("\n") + "\n"


# -- commands -------------------------------------------------------------

def cmd_varpi(args) -> Output:
    m, tol = args.m, args.tol
    methods = ["quadrature", "product", "beta"] if args.method == "all" else [args.method]
    values: dict[str, float] = {}
    details: dict[str, dict] = {}
    for method in methods:
        try:
            if method == "quadrature":
                values[method] = clover.varpi(m)
            elif method == "beta":
                values[method] = clover.varpi_beta_oracle(m)
            else:
                target = tol if args.method == "product" else tol / 10.0
                est = wallis.estimate_varpi(m, max(target, 1e-10))
                values[method] = est.value
                details[method] = {"terms_used": est.terms_used, "accelerated": est.accelerated,
                                   "error_estimate": est.error_estimate}
        except (QuadratureError, wallis.TermBudgetExceeded, ArithmeticError) as exc:
            raise CommandError(f"varpi method '{method}' failed: {exc}") from exc
    payload = {"command": "varpi", "m": m, "tol": tol, "method": args.method,
               "values": values}
    if details:
        payload["product"] = details["product"]
    ok = True
    lines = [f"varpi_{m} ({args.method})"]
    for method, value in values.items():
        lines.append(f"  {method:<11} {value!r}")
    rows = [(method, repr(value)) for method, value in values.items()]
    if len(values) > 1:
        spread = max(values.values()) - min(values.values())
        payload["max_discrepancy"] = spread
        ok = spread <= tol
        lines.append(f"  max pairwise discrepancy {spread:.3e} (tol {tol:g})")
        rows.append(("max_discrepancy", repr(spread)))
    payload["ok"] = ok
    return Output(payload, ("method", "value"), rows, "\n".join(lines), ok)


def cmd_product(args) -> Output:
    m, N = args.m, args.terms
    if N < 0:
        raise UsageError("--terms must be >= 0")
    if args.exact and N > wallis.EXACT_LIMIT:
        raise UsageError(f"--exact is limited to --terms <= {wallis.EXACT_LIMIT}")
    pp = wallis.partial_product(m, N, exact=args.exact)
    exact = fraction_str(pp.exact)
    payload = {"command": "product", "m": m, "terms": N, "approx": pp.approx,
               "exact": exact, "exact_terms": pp.exact_terms, "ok": True}
    if args.exact:
        human = f"{exact}\n~ {pp.approx!r}  (m={m}, N={N})"
    else:
        human = f"P_{N} (m={m}) = {pp.approx!r}"
    row = (m, N, repr(pp.approx), exact or "", "" if pp.exact_terms is None else pp.exact_terms)
    return Output(payload, ("m", "terms", "approx", "exact", "exact_terms"), [row], human)


def cmd_clover(args) -> Output | str:
    m = args.m
    if args.render:
        points = clover.sample_curve(m, principal_only=not args.all_leaves, samples=args.samples)
        if args.plot:
            from .plotting import plot_clovers
            plot_clovers([m], args.plot, samples=args.samples)
        leaves = len({p.leaf for p in points})
        if args.format == "svg":
            return curve_svg(points, m)
        if args.format == "csv":
            return curve_csv(points)
        payload = {
            "command": "clover", "mode": "render", "m": m, "leaves": leaves,
            "samples": args.samples,
            "points": [{"leaf": p.leaf, "theta": p.angle, "r": p.radius, "x": p.x, "y": p.y}
                       for p in points],
            "ok": True,
        }
        human = f"{m}-clover: {leaves} leaf path(s), {len(points)} points"
        return Output(payload, CURVE_CSV_HEADER, [], human)
    if args.format == "svg":
        raise UsageError("--format svg is only valid with --render")
    x = args.eval
    try:
        phi, slope = clover.clover_fn_and_derivative(m, x)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    payload = {"command": "clover", "mode": "eval", "m": m, "x": x, "phi": phi, "dphi": slope,
               "ok": True}
    human = f"phi_{m}({x!r}) = {phi!r}\nphi_{m}'({x!r}) = {slope!r}"
    return Output(payload, ("m", "x", "phi", "dphi"), [(m, repr(x), repr(phi), repr(slope))], human)


def cmd_moments(args) -> Output:
    m, n, tol = args.m, args.n, args.tol
    if not 0 <= n < moments.MAX_QUADRATURE_INDEX:
        raise UsageError(f"--n must lie in [0, {moments.MAX_QUADRATURE_INDEX - 1}]")
    quad = moments.moment_quadrature(m, n).value
    rec = moments.moment_by_recurrence(m, n).value
    closed = []
    if n >= 1 and n % m == 0:
        closed.append(moments.moment_closed_form(m, n // m, moments.Which.AT_MN))
    if (n + 1) % m == 0:
        closed.append(moments.moment_closed_form(m, (n + 1) // m, moments.Which.AT_MN_MINUS_1))
    sq = moments.squeeze_diagnostic(m, n)
    routes = [("quadrature", quad, "", ""), ("recurrence", rec, "", "")]
    for c in closed:
        routes.append(("closed_form", c.value(), fraction_str(c.coefficient), c.basis.value))
    spread = max(r[1] for r in routes) - min(r[1] for r in routes)
    ok = spread <= tol and sq.holds(tol)
    payload = {
        "command": "moments", "m": m, "n": n, "tol": tol,
        "quadrature": quad, "recurrence": rec,
        "closed_forms": [{"which": ("at_mn" if c.basis is moments.Basis.VARPI else "at_mn_minus_1"),
                          "index": c.index, "coefficient": fraction_str(c.coefficient),
                          "basis": c.basis.value, "value": c.value()} for c in closed],
        "squeeze": {"ratio_n1_n": sq.ratio_n1_n, "lower_bound": fraction_str(sq.lower_bound)},
        "max_discrepancy": spread,
        "ok": ok,
    }
    lines = [f"I_{m}({n})"]
    for route, value, coef, basis in routes:
        extra = f"  = {coef} * {basis}" if coef else ""
        lines.append(f"  {route:<11} {value!r}{extra}")
    lines.append(f"  I({n + 1})/I({n}) = {sq.ratio_n1_n!r} in [{fraction_str(sq.lower_bound)}, 1]")
    lines.append(f"  max discrepancy {spread:.3e} (tol {tol:g})")
    rows = [(r, repr(v), c, b) for r, v, c, b in routes]
    return Output(payload, ("route", "value", "coefficient", "basis"), rows, "\n".join(lines), ok)


def cmd_verify(args) -> Output:
    rows = run_verification(args.m_range, args.n_range, args.tol)
    ok = all(r.passed for r in rows)
    failed = [r for r in rows if not r.passed]
    payload = {
        "command": "verify",
        "m_range": list(args.m_range), "n_range": list(args.n_range), "tol": args.tol,
        "checks": [r.as_dict() for r in rows],
        "passed": len(rows) - len(failed), "failed": len(failed),
        "ok": ok,
    }
    fmt = "{:<44} {:>3} {:>3}  {:>10}  {:>8}  {}"
    lines = [fmt.format("identity", "m", "n", "residual", "tol", "result")]
    for r in rows:
        lines.append(fmt.format(r.identity, "" if r.m is None else r.m, "" if r.n is None else r.n,
                                f"{r.residual:.3e}", f"{r.tolerance:.0e}",
                                "pass" if r.passed else "FAIL"))
    lines.append(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    csv_rows = [(r.identity, "" if r.m is None else r.m, "" if r.n is None else r.n,
                 repr(r.residual), repr(r.tolerance), "pass" if r.passed else "fail", r.detail)
                for r in rows]
    out = Output(payload, ("identity", "m", "n", "residual", "tolerance", "result", "detail"),
                 csv_rows, "\n".join(lines), ok)
    if failed:
        out.error = f"verification failed: first failing identity {failed[0].identity} " \
                    f"(m={failed[0].m}, n={failed[0].n})"
    return out


def cmd_report(args) -> Output:
    m = args.m
    rows = wallis.convergence_report(m, args.checkpoints)
    if args.plot:
        from .plotting import plot_convergence
        plot_convergence(m, rows, args.plot)
    payload = {
        "command": "report", "m": m, "varpi": clover.varpi(m),
        "rows": [{"N": r.N, "P_N": r.P_N, "error": r.error, "N_error": r.N_error} for r in rows],
        "ok": True,
    }
    fmt = "{:>10}  {:>22}  {:>12}  {:>12}"
    lines = [f"m = {m}, varpi = {clover.varpi(m)!r}", fmt.format("N", "P_N", "error", "N*error")]
    for r in rows:
        lines.append(fmt.format(r.N, repr(r.P_N), f"{r.error:.6e}", f"{r.N_error:.6f}"))
    csv_rows = [(r.N, repr(r.P_N), repr(r.error), repr(r.N_error)) for r in rows]
    return Output(payload, ("N", "P_N", "error", "N_error"), csv_rows, "\n".join(lines))


# -- argument parsing -----------------------------------------------------------

def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return value


def _tolerance(text):
    value = float(text)
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return value


def _int_range(text):
    """``"1-6"``, ``"3"`` or ``"1,2,4"``."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            values.extend(range(int(lo), int(hi) + 1))
        elif part:
            values.append(int(part))
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return sorted(set(values))


def _checkpoints(text):
    values = [int(v) for v in text.split(",") if v.strip()]
    if not values or any(b <= a for a, b in zip(values, values[1:])) or values[0] < 0:
        raise argparse.ArgumentTypeError("checkpoints must be ascending non-negative integers")
    return values


def _global_options(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=FORMATS, default=default("human"))
    parser.add_argument("--tol", type=_tolerance, default=default(DEFAULT_TOL),
                        help="tolerance for float identities (default 1e-9)")
    parser.add_argument("--seedless", action="store_true", default=default(False),
                        help="reserved; rejected (nothing here uses randomness)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cloverwallis",
        description="Clover constants, the m-clover function and the generalized Wallis product.",
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("varpi", help="the clover constant varpi_m")
    _global_options(p, suppress=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--method", choices=("quadrature", "product", "beta", "all"), default="quadrature")
    p.set_defaults(func=cmd_varpi)

    p = sub.add_parser("product", help="partial products of the generalized Wallis product")
    _global_options(p, suppress=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--terms", type=int, default=100)
    p.add_argument("--exact", action="store_true", help="print the reduced fraction")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("clover", help="evaluate the clover function or render the curve")
    _global_options(p, suppress=True)
    p.add_argument("--m", type=_positive_int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eval", type=float, metavar="X")
    mode.add_argument("--render", action="store_true")
    p.add_argument("--samples", type=int, default=361, help="points per leaf (>= 2)")
    p.add_argument("--all-leaves", action="store_true")
    p.add_argument("--out", type=Path, help="write the payload here instead of stdout")
    p.add_argument("--plot", type=Path, help="also draw the curve with matplotlib to this file")
    p.set_defaults(func=cmd_clover)

    p = sub.add_parser("moments", help="the moment I_m(n) by every available route")
    _global_options(p, suppress=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify", help="check every identity over ranges of m and n")
    _global_options(p, suppress=True)
    p.add_argument("--m-range", type=_int_range, default=list(range(1, 7)))
    p.add_argument("--n-range", type=_int_range, default=list(range(0, 13)))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="convergence table of the partial products")
    _global_options(p, suppress=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--checkpoints", type=_checkpoints, default=_checkpoints(DEFAULT_CHECKPOINTS))
    p.add_argument("--plot", type=Path, help="also draw the convergence figure to this file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seedless:
        parser.error("--seedless is reserved and not accepted: no command uses randomness")
    if args.format == "svg" and args.command != "clover":
        parser.error("--format svg is only valid for 'clover --render'")
    if args.command == "clover" and args.render and args.samples < 2:
        parser.error("--samples must be >= 2")
    if args.command == "verify" and (min(args.m_range) < 1 or min(args.n_range) < 0):
        parser.error("--m-range needs m >= 1 and --n-range needs n >= 0")
    try:
        result = args.func(args)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = result if isinstance(result, str) else result.render(args.format)
    out_path = getattr(args, "out", None)
    if out_path is not None:
        try:
            out_path.write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    ok = True if isinstance(result, str) else result.ok
    if not ok:
        message = result.error or f"{args.command}: tolerance not met"
        print(f"error: {message}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
