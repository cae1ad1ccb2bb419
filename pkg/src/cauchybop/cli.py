"""Command-line front end.

One binary, subcommand style:

    cauchybop bimoments  spec.json -N 6 --kmax 4
    cauchybop verify     spec.json -N 5 --suite all --mode exact
    cauchybop bop        spec.json -n 3
    cauchybop zeros      spec.json -n 4
    cauchybop recurrence spec.json -N 5
    cauchybop rhp        spec.json -n 2 --point 10

The measure spec is a JSON document with keys "alpha" and "beta", each

    {"type": "discrete", "atoms": [{"x": "<decimal>", "w": "<decimal>"}, ...]}

or

    {"type": "density", "support": [a, b],
     "potential": {"coeffs": [...], "hbar": 1.0},
     "quadrature": {"rule": "gauss-legendre", "order": 64}}

Positions and weights are decimal strings parsed to exact rationals, so
exact-mode results are reproducible bit for bit; rationals are emitted as
"p/q" strings and floats as shortest round-trip decimals.

Exit codes: 0 = all checks pass, 1 = a check failed, 2 = usage or input
error, 3 = theory violation (an exact identity failed, meaning corrupted
input or an internal bug -- never seen on valid data).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .bimoment import (CAUCHY, check_total_positivity, compute_bimoments,
                       leading_minors, oracle_dn, rank_one_shift_residual)
from .bop import evaluate
from .bundle import (Apparatus, build_apparatus,
                     reliable_degree_cap)
from .cdkernel import (cd_residual_hat, cd_residual_plain,
                       verify_block_against_dense)
from .errors import (CauchybopError, DegenerateMatrixError,
                     TheoryViolationError)
from .measure import (Atom, DensityMeasure, DiscreteMeasure, discretize,
                      measure_from_strings)
from .nikishin import (aux_vectors, duality_check, ecd_residual, order_check,
                       pade_solve, plucker_residual)
from .recurrence import four_term_residual, tn_oscillatory_certificate
from .rhp import (assemble_gamma, assemble_gamma_hat, asymptotic_check,
                  extract_constants, jump_slope_study)
from .scalars import format_scalar, parse_exact
from .zeros import charpoly_identity_residual, zeros_of

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_THEORY = 3


class UsageError(Exception):
    pass


# -- measure spec parsing ---------------------------------------------------------


def _measure_from_dict(d, float_mode: bool):
    try:
        kind = d["type"]
        if kind == "discrete":
            pairs = [(a["x"], a["w"]) for a in d["atoms"]]
            m = measure_from_strings(pairs)
            if float_mode:
                m = DiscreteMeasure(tuple(Atom(float(a.position), float(a.weight))
                                          for a in m.atoms))
            return m
        if kind == "density":
            pot = d["potential"]
            quad = d.get("quadrature", {})
            return DensityMeasure(
                support=tuple(float(v) for v in d["support"]),
                potential=[float(c) for c in pot["coeffs"]],
                hbar=float(pot.get("hbar", 1.0)),
                quadrature=quad.get("rule", "gauss-legendre"),
                order=int(quad.get("order", 64)),
            )
        raise UsageError(f"unknown measure type {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed measure spec: {exc}") from exc


def load_spec(path: str, float_mode: bool):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        doc = json.loads(text)
        return (_measure_from_dict(doc["alpha"], float_mode),
                _measure_from_dict(doc["beta"], float_mode))
    except OSError as exc:
        raise UsageError(f"cannot read spec: {exc}") from exc
    except (json.JSONDecodeError, KeyError) as exc:
        raise UsageError(f"malformed JSON spec: {exc}") from exc


def _grid(rows):
    return [[format_scalar(v) for v in row] for row in rows]


def _emit(payload, fmt: str, csv_rows=None):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        out = io.StringIO()
        writer = csv.writer(out)
        for row in (csv_rows if csv_rows is not None else []):
            writer.writerow(row)
        print(out.getvalue(), end="")


def _sample_points(measures, count: int, spread: int = 7):
    """Deterministic rational evaluation points off every pole set."""
    hull_max = max(max(abs(p) for p in m.signed_positions()) for m in measures)
    poles = set()
    for m in measures:
        for p in m.signed_positions():
            poles.add(Fraction(p))
            poles.add(-Fraction(p))
    base = Fraction(int(hull_max) + 2)
    pts = []
    k = 1
    while len(pts) < count:
        for cand in (base + Fraction(k, spread), -base - Fraction(k, spread),
                     Fraction(k, spread + 4)):
            if cand not in poles and cand != 0 and len(pts) < count:
                pts.append(cand)
        k += 1
    return pts


# -- the verification suites -------------------------------------------------------


#: Float-mode identity checks are conditioning-limited: the bimoment LDU
#: loses roughly the digits of h_n/h_0 by degree n, so residual tolerances
#: are calibrated loose and degree windows are capped adaptively.  Exact
#: mode is the authoritative verification lane.
FLOAT_RTOL = 1e-3


class Runner:
    def __init__(self, mode: str):
        self.mode = mode
        self.checks = []

    def _push(self, name, status, mag, elapsed):
        self.checks.append({
            "name": name,
            "status": status,
            "residual": format_scalar(mag),
            "mode": self.mode,
            "elapsed": round(elapsed, 6),
        })

    def record(self, name: str, residual, tol: float = FLOAT_RTOL):
        if isinstance(residual, bool):
            ok, mag = residual, 0 if residual else 1
        else:
            mag = abs(residual)
            ok = (mag == 0) if self.mode == "exact" else (mag <= tol)
        self._push(name, "pass" if ok else "fail", mag, 0.0)
        return ok

    def run(self, name: str, fn, tol: float = FLOAT_RTOL):
        t0 = time.perf_counter()
        residual = fn()
        elapsed = time.perf_counter() - t0
        if isinstance(residual, bool):
            ok, mag = residual, 0 if residual else 1
        else:
            mag = abs(residual)
            ok = (mag == 0) if self.mode == "exact" else (mag <= tol)
        self._push(name, "pass" if ok else "fail", mag, elapsed)
        return ok

    def skip(self, name: str, why: str):
        self._push(f"{name} [skipped: {why}]", "skip", 0, 0.0)

    @property
    def passed(self):
        return all(c["status"] != "fail" for c in self.checks)

    def report(self, suite: str, order: int):
        return {"suite": suite, "order": order, "mode": self.mode,
                "status": "pass" if self.passed else "fail",
                "checks": self.checks}


float_degree_cap = reliable_degree_cap


def _suite_tp(r: Runner, app: Apparatus, kmax: int):
    if app.exact:
        tp_tol = 0.0
    else:
        scale = max(abs(v) for row in app.I.entries for v in row)
        tp_tol = 1e-12 * (kmax * float(scale)) ** kmax
    cert = check_total_positivity(app.I, kmax, tol=tp_tol)
    label = ("consecutive minors positive" if app.exact
             else "no negative consecutive minor")
    r.record(f"{label} through {cert.kmax}x{cert.kmax}", cert.passed)
    D = leading_minors(app.I)
    # the tuple-sum oracle enumerates C(atoms, n)^2 index pairs; only
    # worthwhile at desk-scale atom counts
    if max(len(app.alpha), len(app.beta)) <= 16:
        for n in range(1, min(4, len(app.alpha), len(app.beta)) + 1):
            oracle = oracle_dn(app.alpha, app.beta, n)
            r.run(f"leading minor D_{n} equals tuple-sum oracle",
                  lambda o=oracle, d=D[n - 1]: abs(d - o) / abs(float(D[n - 1])),
                  1e-8)
    res = rank_one_shift_residual(app.I, app.alpha, app.beta)
    scale = max(abs(v) for row in app.I.entries for v in row)
    r.run("rank-one shift identity on bimoments",
          lambda: max(abs(v) for row in res for v in row) / max(1, scale),
          1e-12)


def _suite_recurrence(r: Runner, app: Apparatus):
    from .recurrence import BandOperator, rank_one_XY_residual
    cap = float_degree_cap(app)
    win = app.N + 1 if app.exact else min(cap + 2, app.N + 1)
    res = rank_one_XY_residual(app.X, app.Y, app.family)
    worst = 0
    for i in range(win):
        for j in range(win):
            scale = max(1, abs(app.X[i, j]), abs(app.Y[j, i]))
            worst = max(worst, abs(res[i][j]) / scale)
    r.run(f"rank-one identity X + Y^T = pi eta^T (window {win})",
          lambda: worst)
    if app.exact:
        r.record("band support A in [-1,2]", not app.A.band_violations())
        r.record("band support Ahat in [-2,1]",
                 not app.Ahat.band_violations())
    else:
        sub_a = BandOperator(app.A.entries, app.A.support, app.A.basis,
                             min(win, app.A.valid_rows), win)
        sub_ah = BandOperator(app.Ahat.entries, app.Ahat.support,
                              app.Ahat.basis, win,
                              min(win, app.Ahat.valid_cols))
        scale = max(abs(v) for row in app.X.entries[:win]
                    for v in row[:win])
        band_tol = 1e-8 * float(scale)
        r.record(f"band support A in [-1,2] (window {win})",
                 not sub_a.band_violations(band_tol))
        r.record(f"band support Ahat in [-2,1] (window {win})",
                 not sub_ah.band_violations(band_tol))
    pts = _sample_points([app.alpha, app.beta], 5)
    for n in range(1, min(4, app.N - 1) + 1):
        if n > cap:
            r.skip(f"four-term recurrence residual, degree {n}",
                   "float conditioning")
            continue
        worst = 0
        for pt in pts:
            rp, rq = four_term_residual(app.family, app.A, app.Bhat, n, pt,
                                        relative=True)
            worst = max(worst, rp, rq)
        r.run(f"four-term recurrence residual, degree {n}", lambda w=worst: w)
    if app.exact:
        cert = tn_oscillatory_certificate(app.X, kmax=min(4, app.N + 1))
    else:
        sub = BandOperator(tuple(row[:win] for row in app.X.entries[:win]),
                           app.X.support, app.X.basis, win, win)
        scale = max(abs(v) for row in sub.entries for v in row)
        cert = tn_oscillatory_certificate(
            sub, kmax=min(2, win), exact=False,
            tol=1e-9 * max(1.0, float(scale)) ** 2)
    r.record("X totally nonnegative + oscillatory", cert.oscillatory)


def _suite_cdi(r: Runner, app: Apparatus):
    pts = _sample_points([app.alpha, app.beta], 6)
    pairs = list(zip(pts[::2], pts[1::2]))
    cap = float_degree_cap(app)
    for n in range(2, min(5, app.N - 1) + 1):
        if n > cap:
            r.skip(f"CD identities, n={n}", "float conditioning")
            continue
        try:
            verify_block_against_dense(app, n, pts[0],
                                       rtol=0.0 if app.exact else 1e-6)
            r.record(f"commutator block equals dense commutator, n={n}", True)
        except TheoryViolationError:
            r.record(f"commutator block equals dense commutator, n={n}", False)
        worst_p = max(cd_residual_plain(app, n, x, y, relative=True)
                      for x, y in pairs)
        worst_h = max(cd_residual_hat(app, n, x, y, relative=True)
                      for x, y in pairs)
        r.run(f"plain CD identity residual, n={n}", lambda w=worst_p: w)
        r.run(f"hatted CD identity residual, n={n}", lambda w=worst_h: w)


def _suite_pade(r: Runner, app: Apparatus):
    pts = _sample_points([app.alpha, app.beta], 10)
    worst = max(abs(plucker_residual(app.alpha, app.beta, z)) for z in pts)
    r.run("product identity of the two Nikishin chains", lambda: worst, 1e-12)
    cap = min(4, app.N) if app.exact else float_degree_cap(app)
    for problem in ("q", "p", "switched"):
        for n in range(0, cap + 1):
            cert = order_check(pade_solve(app, n, problem), rtol=1e-6)
            r.record(f"approximation orders, problem={problem}, n={n}",
                     cert.passed)


def _suite_duality(r: Runner, app: Apparatus):
    pts = _sample_points([app.alpha, app.beta], 4)
    cap = float_degree_cap(app)
    for n in (2, 3):
        if n > app.N - 1:
            continue
        if n > cap:
            r.skip(f"extended CD, n={n}", "float conditioning")
            continue
        w, z = pts[0], pts[1]
        aux = aux_vectors(app, n, w, z)
        worst = max(ecd_residual(app, a, b, n, w, z, aux, relative=True)
                    for a in range(3) for b in range(3))
        r.run(f"extended CD residual, all 9 windows, n={n}",
              lambda v=worst: v)
    for n in (2, 3, 4):
        if n > app.N - 1:
            continue
        if n > cap:
            r.skip(f"perfect duality pairing, n={n}", "float conditioning")
            continue
        worst = max(abs(duality_check(app, a, b, n, pts[2]))
                    for a in range(3) for b in range(3))
        r.run(f"perfect duality pairing, n={n}", lambda v=worst: v)


def _suite_rhp(r: Runner, app: Apparatus, eps_list):
    pts = _sample_points([app.alpha, app.beta], 3)
    n = min(3, app.N - 1) if app.exact else min(2, app.N - 1)
    det_tol = 1e-12 if app.exact else 1e-8
    for w in pts:
        g = assemble_gamma(app, n, w)
        r.run(f"det Gamma(w={w}) = 1", lambda d=g.determinant: d - 1, det_tol)
        gh = assemble_gamma_hat(app, n, w)
        r.run(f"det Gammahat(z={w}) = 1", lambda d=gh.determinant: d - 1,
              det_tol)
    rtol = 1e-8 if app.exact else 1e-5
    r.record("asymptotic powers of Gamma",
             asymptotic_check(app, n, "gamma", rtol=rtol).passed)
    r.record("asymptotic powers of Gammahat",
             asymptotic_check(app, n, "gamma_hat", rtol=rtol).passed)
    c_sq, eta_sq = extract_constants(app, n)
    h = app.family.h[n - 1]
    r.run("recovered c^2 matches family norm",
          lambda: (c_sq - h) / h, 1e-6)
    eta_ref = app.family.eta_monic[n - 1] ** 2 / h
    r.run("recovered eta^2 matches family average",
          lambda: (eta_sq - eta_ref) / eta_ref, 1e-6)
    if app.beta_density is not None:
        a, b = app.beta_density.support
        w0 = (a + b) / 2.0
        residuals, slope = jump_slope_study(app, min(2, n), w0, eps_list)
        r.record(f"jump residual slope {slope:.3f} within factor 2 of linear",
                 0.5 <= slope <= 2.0)


SUITES = {
    "tp": lambda r, app, kmax, eps: _suite_tp(r, app, kmax),
    "recurrence": lambda r, app, kmax, eps: _suite_recurrence(r, app),
    "cdi": lambda r, app, kmax, eps: _suite_cdi(r, app),
    "pade": lambda r, app, kmax, eps: _suite_pade(r, app),
    "duality": lambda r, app, kmax, eps: _suite_duality(r, app),
    "rhp": lambda r, app, kmax, eps: _suite_rhp(r, app, eps),
}


# -- subcommands --------------------------------------------------------------------


def cmd_bimoments(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    if isinstance(alpha, DensityMeasure):
        alpha = discretize(alpha)
    if isinstance(beta, DensityMeasure):
        beta = discretize(beta)
    N = args.order
    kmax = args.kmax or min(N, 6)
    warnings = []
    if kmax > N:
        warnings.append(f"kmax {kmax} clipped to order {N}")
        kmax = N
    I = compute_bimoments(alpha, beta, CAUCHY, N)
    D = leading_minors(I)
    cert = check_total_positivity(I, kmax)
    res = rank_one_shift_residual(I, alpha, beta)
    shift_ok = all(v == 0 for row in res for v in row) if I.exact else \
        max(abs(v) for row in res for v in row) < 1e-10
    degenerate = [n + 1 for n, d in enumerate(D) if d == 0]
    if degenerate:
        warnings.append(
            f"degenerate: leading minor vanishes at order {degenerate[0]} "
            "(measure has fewer points of increase)")
    payload = {
        "order": N,
        "I": _grid(I.entries),
        "D": [format_scalar(d) for d in D],
        "total_positivity": {
            "passed": cert.passed, "kmax": cert.kmax,
            "min_minor": format_scalar(cert.min_minor),
            "violation": None if cert.violation is None else {
                "k": cert.violation[0], "row": cert.violation[1],
                "col": cert.violation[2],
                "value": format_scalar(cert.violation[3])},
        },
        "rank_one_shift": "pass" if shift_ok else "fail",
        "warnings": warnings,
    }
    _emit(payload, args.output, csv_rows=payload["I"])
    return EXIT_PASS if shift_ok else EXIT_CHECK_FAILED


def cmd_verify(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    if args.mode == "exact":
        for m in (alpha, beta):
            if isinstance(m, DensityMeasure) or not m.is_exact:
                raise UsageError("exact mode requires discrete-rational measures")
    app = build_apparatus(alpha, beta, args.order)
    runner = Runner(args.mode if app.exact else "float")
    eps_list = args.eps or [1e-4, 1e-5, 1e-6]
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        SUITES[name](runner, app, args.kmax or min(args.order + 2, 6), eps_list)
    report = runner.report(args.suite, args.order)
    _emit(report, args.output,
          csv_rows=[[c["name"], c["status"], c["residual"], c["mode"]]
                    for c in report["checks"]])
    return EXIT_PASS if runner.passed else EXIT_CHECK_FAILED


def cmd_bop(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    n = args.degree
    app = build_apparatus(alpha, beta, max(n, 1))
    fam = app.family
    payload = {
        "degree": n,
        "p_monic": [format_scalar(c) for c in fam.p_monic[n]],
        "q_monic": [format_scalar(c) for c in fam.q_monic[n]],
        "h": format_scalar(fam.h[n]),
        "pi": format_scalar(fam.pi_monic[n]),
        "eta": format_scalar(fam.eta_monic[n]),
        "c_float": fam.c(n),
    }
    if args.point is not None:
        pt = parse_exact(args.point) if app.exact else float(args.point)
        payload["p_at_point"] = format_scalar(evaluate(fam, "p", n, pt))
        payload["q_at_point"] = format_scalar(evaluate(fam, "q", n, pt))
    _emit(payload, args.output,
          csv_rows=[payload["p_monic"], payload["q_monic"]])
    return EXIT_PASS


def cmd_zeros(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    n = args.degree
    app = build_apparatus(alpha, beta, max(n, 1))
    payload = {"degree": n}
    ok = True
    for which in ("p", "q"):
        rep = zeros_of(app, which, n)
        res = charpoly_identity_residual(app, which, n, Fraction(0)) if n else 0
        payload[which] = {
            "zeros": list(rep.zeros),
            "min_gap": rep.min_gap if rep.min_gap != float("inf") else None,
            "all_positive": rep.all_positive,
            "inside_support_hull": rep.inside_hull,
            "interlaced_with_previous": rep.interlaced_with_previous,
            "charpoly_residual_at_0": format_scalar(res),
            "numerically_coincident": rep.numerically_coincident,
        }
        ok = ok and rep.all_positive and rep.inside_hull \
            and not rep.numerically_coincident
    _emit(payload, args.output,
          csv_rows=[[which] + list(payload[which]["zeros"])
                    for which in ("p", "q")])
    return EXIT_PASS if ok else EXIT_CHECK_FAILED


def cmd_recurrence(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    app = build_apparatus(alpha, beta, args.order)
    payload = {
        "order": args.order,
        "X": _grid(app.X.entries),
        "Y": _grid(app.Y.entries),
        "A": _grid(app.A.entries),
        "Ahat": _grid(app.Ahat.entries),
        "band_supports": {"X": list(app.X.support), "Y": list(app.Y.support),
                          "A": list(app.A.support),
                          "Ahat": list(app.Ahat.support)},
    }
    _emit(payload, args.output, csv_rows=payload["X"])
    return EXIT_PASS


def cmd_rhp(args) -> int:
    alpha, beta = load_spec(args.spec, args.mode == "float")
    n = args.degree
    app = build_apparatus(alpha, beta, max(n + 1, 2))
    payload = {"degree": n}
    ok = True
    if app.beta_density is not None and args.eps:
        a, b = app.beta_density.support
        w0 = (a + b) / 2.0
        residuals, slope = jump_slope_study(app, n, w0, args.eps)
        payload["jump_study"] = {
            "w0": w0, "eps": list(args.eps), "residuals": residuals,
            "slope": slope}
        ok = 0.5 <= slope <= 2.0
    else:
        pt = parse_exact(args.point) if args.point else Fraction(10)
        if not app.exact:
            pt = float(pt)
        g = assemble_gamma(app, n, pt)
        gh = assemble_gamma_hat(app, n, pt)
        payload["point"] = format_scalar(pt)
        payload["gamma"] = _grid(g.entries)
        payload["det_gamma"] = format_scalar(g.determinant)
        payload["gamma_hat"] = _grid(gh.entries)
        payload["det_gamma_hat"] = format_scalar(gh.determinant)
        for d in (g.determinant, gh.determinant):
            ok = ok and (d == 1 if app.exact else abs(d - 1) < 1e-12)
    _emit(payload, args.output,
          csv_rows=payload.get("gamma", [["jump_study"]]))
    return EXIT_PASS if ok else EXIT_CHECK_FAILED


# -- entry point ---------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchybop",
        description="Biorthogonal polynomial apparatus for the Cauchy "
                    "kernel: construction and verification.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=False):
        p.add_argument("spec", help="measure spec JSON file, or - for stdin")
        if degree:
            p.add_argument("-n", "--degree", type=int, required=True)
        else:
            p.add_argument("-N", "--order", type=int, required=True)
        p.add_argument("--mode", choices=("exact", "float"), default="exact")
        p.add_argument("--output", choices=("json", "csv"), default="json")

    p = sub.add_parser("bimoments", help="bimoment matrix, minors, certificates")
    common(p)
    p.add_argument("--kmax", type=int)
    p.set_defaults(fn=cmd_bimoments)

    p = sub.add_parser("verify", help="run an invariant suite")
    common(p)
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--kmax", type=int)
    p.add_argument("--eps", type=float, nargs="+")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bop", help="biorthogonal polynomial coefficients")
    common(p, degree=True)
    p.add_argument("--point")
    p.set_defaults(fn=cmd_bop)

    p = sub.add_parser("zeros", help="zeros, gaps, interlacing")
    common(p, degree=True)
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("recurrence", help="band operators")
    common(p)
    p.set_defaults(fn=cmd_recurrence)

    p = sub.add_parser("rhp", help="boundary-value matrices")
    common(p, degree=True)
    p.add_argument("--point")
    p.add_argument("--eps", type=float, nargs="+")
    p.set_defaults(fn=cmd_rhp)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoryViolationError as exc:
        print(f"theory violation: {exc}", file=sys.stderr)
        return EXIT_THEORY
    except DegenerateMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CauchybopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
