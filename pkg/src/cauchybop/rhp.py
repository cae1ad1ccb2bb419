"""Assembly and verification of the 3x3 boundary-value matrices.

Two matrices are assembled from windows of the auxiliary vectors:

* Gamma(w), built from the q-chain: rows are (scaled) windows of
  (qhat_{n-1}, q_{n-1}, qhat_{n-2}) across the three auxiliary columns.
  It is analytic off supp(db) and the reflected supp(da*), has unit
  determinant, jumps by an upper-triangular factor with entry
  -2 pi i db/dw across supp(db) (and the analogous (2,3) factor across
  supp(da*)), and behaves like (1 + O(1/w)) diag(w^n, w^-1, w^(-n+1)) at
  infinity.

* Gammahat(z), built from the p-chain windows (p_n, phat_{n-1}, p_{n-1}),
  with diag(z^n, 1, z^-n) asymptotics.

Every entry is a square-root-free combination of monic data, so at
rational points of discrete-rational input the matrices are exactly
rational and det = 1 is asserted as literal equality.

A normalization note, pinned by exact computation (see the tests): with
the customary third-row prefactor sign (-1)**(n-1), det Gamma = -1
identically; the sign used here is (-1)**n, which restores det = +1 and
the stated diagonal asymptotics.  The two assembly routes (normalization prefactor times raw
windows vs. the recovery form) are both implemented and asserted to agree.

Jump verification on density-backed measures evaluates Gamma(w0 + i eps)
and Gamma(w0 - i eps) by a singularity-aware Cauchy transform: the
integrand is split at x0 = Re w into a subtracted part (smooth, handled by
the quadrature rule) plus the exactly integrated log term
F(x0) (log(w-a) - log(w-b)), whose complex branch carries the principal
value and the +-i pi density term on the two sides of the cut.  The
residual Gamma_+ - Gamma_- J(w0) is then O(eps) up to quadrature error,
and is expected to fall linearly as eps shrinks.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .bimoment import det
from .bundle import Apparatus
from .errors import OrderUnderflowError
from .measure import DensityMeasure
from .nikishin import MarkovFunction, _p_aux, _q_aux, markov
from .polys import peval
from .scalars import is_exact
from .series import PowerTail


@dataclass(frozen=True)
class RHMatrix:
    which: str              # "gamma" | "gamma_hat"
    n: int
    point: object
    entries: tuple          # 3x3
    determinant: object


# -- assembly from exact window values ------------------------------------------


def _combine_gamma_rows(app: Apparatus, n: int, q):
    """Rows of Gamma from q[a][j] values at j = n-2, n-1, n.

    row 1 = eta~_n qhat_{a,n-1}; row 2 = q_{a,n-1}/eta*_{n-1};
    row 3 = (-1)^n eta*_{n-2} qhat_{a,n-2}.
    """
    fam = app.family
    sigma = (-1) ** n

    def qhat(a, j):
        return -q[a][j] / fam.eta_star(j) + q[a][j + 1] / fam.eta_star(j + 1)

    return (
        tuple(fam.eta_monic[n] * qhat(a, n - 1) for a in range(3)),
        tuple(q[a][n - 1] / fam.eta_star(n - 1) for a in range(3)),
        tuple(sigma * fam.eta_star(n - 2) * qhat(a, n - 2) for a in range(3)),
    )


def _prefactor_gamma_rows(app: Apparatus, n: int, q):
    """The same matrix by the normalization-prefactor route: a 3x3 constant
    matrix times the raw window matrix, written in square-root-free combos
    (c_n q_{a,n} = h_n q*_{a,n} and q_{a,j}/c_j = q*_{a,j})."""
    fam = app.family
    s1 = [fam.h[n] * q[a][n] for a in range(3)]
    s2 = [q[a][n - 1] / fam.eta_star(n - 1) for a in range(3)]
    s3 = [(-1) ** (n + 1) * q[a][n - 2] for a in range(3)]
    row0 = tuple(s1[a] - fam.eta_monic[n] * s2[a] for a in range(3))
    row1 = tuple(s2)
    row2 = tuple((-1) ** n * fam.eta_star(n - 2) * s2[a] + s3[a]
                 for a in range(3))
    return row0, row1, row2


def _combine_gamma_hat_rows(app: Apparatus, n: int, p, phat):
    """Rows of Gammahat from p[b][j], phat[b][j] at j = n-1, n."""
    fam = app.family
    return (
        tuple(p[b][n] for b in range(3)),
        tuple(-phat[b][n - 1] for b in range(3)),
        tuple((-1) ** n * p[b][n - 1] / fam.h[n - 1] for b in range(3)),
    )


def _prefactor_gamma_hat_rows(app: Apparatus, n: int, phat, wbs):
    """Gammahat by the prefactor route, using only hatted windows plus the
    convention phat_{b,-1} = (0, -1, -W_beta_star(z)) that extends the
    forward substitution one slot below degree zero."""
    fam = app.family
    minus1 = [phat[b][n - 2] if n >= 2 else (0, -1, -wbs)[b] for b in range(3)]
    row0 = tuple(-(fam.h[n] / fam.eta_monic[n]) * (phat[b][n] - phat[b][n - 1])
                 for b in range(3))
    row1 = tuple(-phat[b][n - 1] for b in range(3))
    row2 = tuple((-1) ** n * (minus1[b] - phat[b][n - 1]) / fam.eta_monic[n - 1]
                 for b in range(3))
    return row0, row1, row2


def _assert_rows_agree(r1, r2, exact: bool, what: str):
    for i in range(3):
        for j in range(3):
            a, b = r1[i][j], r2[i][j]
            if exact:
                if a != b:
                    raise AssertionError(
                        f"{what}: assembly routes disagree at ({i},{j}): {a} vs {b}")
            elif abs(a - b) > 1e-9 * max(1.0, abs(a)):
                raise AssertionError(
                    f"{what}: assembly routes disagree at ({i},{j}): {a} vs {b}")


def assemble_gamma(app: Apparatus, n: int, w) -> RHMatrix:
    """Gamma(w) for discrete measures; w off supp(db) and supp(da*)."""
    app.require_window(n)
    q, _ = _q_aux(app, n, w)
    rows = _combine_gamma_rows(app, n, q)
    _assert_rows_agree(rows, _prefactor_gamma_rows(app, n, q), app.exact,
                       "gamma")
    d = det([list(r) for r in rows], app.exact and is_exact(w))
    return RHMatrix("gamma", n, w, rows, d)


def assemble_gamma_hat(app: Apparatus, n: int, z) -> RHMatrix:
    """Gammahat(z) for discrete measures; z off supp(da) and supp(db*)."""
    if not 1 <= n <= app.N - 1:
        raise OrderUnderflowError(f"need 1 <= n <= {app.N - 1}, got {n}")
    p, phat = _p_aux(app, n, z)
    rows = _combine_gamma_hat_rows(app, n, p, phat)
    wbs = markov(app.alpha, app.beta, "W_beta_star")(z)
    _assert_rows_agree(rows, _prefactor_gamma_hat_rows(app, n, phat, wbs),
                       app.exact, "gamma_hat")
    d = det([list(r) for r in rows], app.exact and is_exact(z))
    return RHMatrix("gamma_hat", n, z, rows, d)


# -- exact expansions at infinity -------------------------------------------------


def _q_series(app: Apparatus, j: int, depth: int):
    """PowerTails of q*_j, its first transform, its second transform."""
    fam = app.family
    qs = fam.q_star(j)
    w_beta = markov(app.alpha, app.beta, "W_beta")
    m1 = w_beta.weighted(lambda t: peval(qs, t))
    xs, ws_a = app.alpha.signed_positions(), app.alpha.weights()
    ys, ws_b = app.beta.signed_positions(), app.beta.weights()
    masses = tuple(-wa * sum(wb * peval(qs, y) / (x + y)
                             for y, wb in zip(ys, ws_b))
                   for x, wa in zip(xs, ws_a))
    m2 = MarkovFunction("q2", tuple(-x for x in xs), masses)
    return (PowerTail.from_poly(qs), m1.series(depth), m2.series(depth))


def _p_series(app: Apparatus, j_top: int, depth: int):
    """PowerTails of p_j, phat_j and their transforms for j <= j_top."""
    fam = app.family
    xs, ws_a = app.alpha.signed_positions(), app.alpha.weights()
    ys, ws_b = app.beta.signed_positions(), app.beta.weights()
    p0 = [PowerTail.from_poly(fam.p_monic[j]) for j in range(j_top + 1)]
    p1 = []
    p2 = []
    for j in range(j_top + 1):
        pm = fam.p_monic[j]
        m1 = MarkovFunction("p1", xs,
                            tuple(wa * peval(pm, x) for x, wa in zip(xs, ws_a)))
        masses = tuple(-wb * sum(wa * peval(pm, x) / (x + y)
                                 for x, wa in zip(xs, ws_a))
                       for y, wb in zip(ys, ws_b))
        m2 = MarkovFunction("p2", tuple(-y for y in ys), masses)
        p1.append(m1.series(depth))
        p2.append(m2.series(depth))
    phat0 = [PowerTail.from_poly(app.hatted.p_hat[j]) for j in range(j_top + 1)]
    wbs_series = markov(app.alpha, app.beta, "W_beta_star").series(depth)
    one = PowerTail.from_poly((1,))
    phat1 = []
    phat2 = []
    acc1 = PowerTail.zero()
    acc2 = PowerTail.zero()
    for j in range(j_top + 1):
        acc1 = acc1 + p1[j].scale(fam.eta_star(j))
        acc2 = acc2 + p2[j].scale(fam.eta_star(j))
        phat1.append((-acc1) - one)
        phat2.append((-acc2) - wbs_series)
    return (p0, p1, p2), (phat0, phat1, phat2)


def gamma_series(app: Apparatus, n: int, depth: int | None = None):
    """3x3 grid of PowerTails for Gamma's expansion at infinity."""
    app.require_window(n)
    depth = depth or 2 * n + 4
    cols = [_q_series(app, j, depth) for j in (n - 2, n - 1, n)]
    q = [[cols[j][a] for j in range(3)] for a in range(3)]
    fam = app.family

    def qs(a, j):
        return q[a][j - (n - 2)]

    def qhat(a, j):
        return (qs(a, j).scale(-1 / fam.eta_star(j))
                + qs(a, j + 1).scale(1 / fam.eta_star(j + 1)))

    sigma = (-1) ** n
    return (
        tuple(qhat(a, n - 1).scale(fam.eta_monic[n]) for a in range(3)),
        tuple(qs(a, n - 1).scale(1 / fam.eta_star(n - 1)) for a in range(3)),
        tuple(qhat(a, n - 2).scale(sigma * fam.eta_star(n - 2))
              for a in range(3)),
    )


def gamma_hat_series(app: Apparatus, n: int, depth: int | None = None):
    if not 1 <= n <= app.N - 1:
        raise OrderUnderflowError(f"need 1 <= n <= {app.N - 1}, got {n}")
    depth = depth or 2 * n + 4
    p, phat = _p_series(app, n, depth)
    fam = app.family
    return (
        tuple(p[b][n] for b in range(3)),
        tuple(phat[b][n - 1].scale(-1) for b in range(3)),
        tuple(p[b][n - 1].scale((-1) ** n / fam.h[n - 1]) for b in range(3)),
    )


@dataclass(frozen=True)
class AsymptoticCertificate:
    which: str
    n: int
    diag_powers: tuple
    passed: bool
    failures: tuple            # (i, j, description)

    def __bool__(self):
        return self.passed


def asymptotic_check(app: Apparatus, n: int, which: str = "gamma",
                     depth: int | None = None,
                     rtol: float = 1e-8) -> AsymptoticCertificate:
    """Entrywise power-law verification by series: the matrix equals
    (identity + O(1/w)) times diag(w**d_j), coefficient by coefficient.

    Exact data makes every comparison literal equality; float data (a
    discretized density) compares against rtol times the column scale,
    since discretization noise leaves ~1e-12 dust on coefficients that
    vanish identically in exact arithmetic.
    """
    if which == "gamma":
        grid = gamma_series(app, n, depth)
        d = (n, -1, -n + 1)
    else:
        grid = gamma_hat_series(app, n, depth)
        d = (n, 0, -n)
    failures = []
    for j in range(3):
        col_scale = max(abs(grid[i][j].coeff(d[j])) for i in range(3))
        tol = 0 if app.exact else rtol * max(1.0, float(col_scale))
        for i in range(3):
            s = grid[i][j]
            junk = [(p, c) for p, c in s.coeffs if p > d[j] and abs(c) > tol]
            if junk:
                failures.append((i, j, f"grows like power {junk[0][0]} > {d[j]}"))
                continue
            lead = s.coeff(d[j])
            expect = 1 if i == j else 0
            if abs(lead - expect) > tol:
                failures.append((i, j,
                                 f"coefficient at power {d[j]} is {lead}, "
                                 f"expected {expect}"))
    return AsymptoticCertificate(which, n, d, not failures, tuple(failures))


def extract_constants(app: Apparatus, n: int):
    """(c_{n-1}**2, eta_{n-1}**2) recovered from the series of the middle
    row of Gamma.

    The squared constants are rational and must reproduce the family data
    exactly: c**2 = h_{n-1} and eta**2 = eta~_{n-1}**2 / h_{n-1}.  Row and
    column indices follow the assembly order of the rows above (1-based
    (2,1) and (2,3) entries).
    """
    grid = gamma_series(app, n)
    g21, g23 = grid[1][0], grid[1][2]
    a21 = g21.coeff(n - 1)
    a23 = g23.coeff(-n)
    if a21 == 0 or a23 == 0:
        raise ValueError("middle-row entries lack their leading powers "
                         f"{n - 1} and {-n}")
    if app.exact:
        for s, top in ((g21, n - 1), (g23, -n)):
            if any(p > top for p, _ in s.coeffs):
                raise ValueError(f"unexpected growth above power {top}")
    sign = (-1) ** n
    c_sq = sign * a23 / a21
    eta_sq = 1 / (sign * a21 * a23)
    return c_sq, eta_sq


# -- boundary values and jumps ----------------------------------------------------


def _gl_data(dm: DensityMeasure):
    nodes, wts = np.polynomial.legendre.leggauss(dm.order)
    a, b = dm.support
    half, mid = (b - a) / 2.0, (b + a) / 2.0
    ys = mid + half * nodes
    return ys, wts * half


def cauchy_transform_density(dm: DensityMeasure, g, w,
                             near_width: float = 0.05):
    """integral g(y) density(y) dy / (w - y), stable arbitrarily close to
    the cut.

    Off the support the plain quadrature sum is used.  For Re(w) interior
    and |Im w| small, the integrand is split at x0 = Re(w): the subtracted
    part is smooth at the ulp scale of eps and integrates accurately, while
    F(x0) (log(w-a) - log(w-b)) carries the exact near-cut behavior.
    """
    a, b = dm.support
    ys, wts = _gl_data(dm)
    fvals = np.array([g(y) * dm.density_at(y) for y in ys], dtype=complex)
    x0 = w.real if isinstance(w, complex) else float(w)
    imag = w.imag if isinstance(w, complex) else 0.0
    margin = near_width * (b - a)
    if a + 1e-12 < x0 < b - 1e-12 and abs(imag) <= margin:
        f0 = g(x0) * dm.density_at(x0)
        sub = np.sum(wts * (fvals - f0) / (x0 - ys))
        return complex(sub + f0 * (cmath.log(w - a) - cmath.log(w - b)))
    return complex(np.sum(wts * fvals / (w - ys)))


def cauchy_transform_reflected(dm: DensityMeasure, g, w,
                               near_width: float = 0.05):
    """The same transform against the reflected measure dm*: poles on
    [-b, -a].  Reduction: T*(w) = -T[t -> g(-t)](-w); the complex log in
    the unreflected evaluator keeps the boundary sides straight."""
    return -cauchy_transform_density(dm, lambda t: g(-t), -w, near_width)


def _gamma_columns_density(app: Apparatus, n: int, w):
    """q-window values q[a][j], j = n-2..n, for density-backed measures at
    a (possibly complex) point near either cut."""
    if app.alpha_density is None or app.beta_density is None:
        raise ValueError("jump check requires density measure")
    fam = app.family
    xs, ws_a = app.alpha.signed_positions(), app.alpha.weights()

    q = {}
    for j in range(n - 2, n + 1):
        qs = [float(c) for c in fam.q_star(j)]
        q[(0, j)] = peval(qs, w)
        q[(1, j)] = cauchy_transform_density(app.beta_density,
                                             lambda y, qs=qs: peval(qs, y), w)

        def q1_at(x, qs=qs):
            # first transform at a real point far from supp(db)
            return sum(wb * peval(qs, y) / (x - y)
                       for y, wb in zip(app.beta.signed_positions(),
                                        app.beta.weights()))

        q[(2, j)] = cauchy_transform_reflected(app.alpha_density, q1_at, w)
    return [[q[(a, j)] for j in range(n - 2, n + 1)] for a in range(3)]


def _gamma_hat_columns_density(app: Apparatus, n: int, z):
    if app.alpha_density is None or app.beta_density is None:
        raise ValueError("jump check requires density measure")
    fam = app.family
    p0 = {}
    p1 = {}
    p2 = {}
    for j in range(n + 1):
        pm = [float(c) for c in fam.p_monic[j]]
        p0[j] = peval(pm, z)
        p1[j] = cauchy_transform_density(app.alpha_density,
                                         lambda x, pm=pm: peval(pm, x), z)

        def p1_at(y, pm=pm):
            return sum(wa * peval(pm, x) / (y - x)
                       for x, wa in zip(app.alpha.signed_positions(),
                                        app.alpha.weights()))

        p2[j] = cauchy_transform_reflected(app.beta_density, p1_at, z)
    wbs = cauchy_transform_reflected(app.beta_density, lambda t: 1.0, z)
    phat = {0: {}, 1: {}, 2: {}}
    acc1 = 0
    acc2 = 0
    acc0 = 0
    for j in range(n + 1):
        es = float(fam.eta_star(j))
        acc0 += es * p0[j]
        acc1 += es * p1[j]
        acc2 += es * p2[j]
        phat[0][j] = -acc0
        phat[1][j] = -acc1 - 1
        phat[2][j] = -acc2 - wbs
    p = [[p0[j] for j in range(n + 1)], [p1[j] for j in range(n + 1)],
         [p2[j] for j in range(n + 1)]]
    ph = [[phat[b][j] for j in range(n + 1)] for b in range(3)]
    return p, ph


def boundary_matrix(app: Apparatus, n: int, point, which: str = "gamma"):
    """Gamma or Gammahat at a complex point for density-backed input, with
    singularity-aware column evaluation."""
    if which == "gamma":
        q = _gamma_columns_density(app, n, point)
        qq = [{n - 2: q[a][0], n - 1: q[a][1], n: q[a][2]} for a in range(3)]
        return _combine_gamma_rows(app, n, qq)
    p, ph = _gamma_hat_columns_density(app, n, point)
    return _combine_gamma_hat_rows(app, n, p, ph)


def jump_matrix(app: Apparatus, w0: float, which: str = "gamma"):
    """The local jump factor at an interior point of one of the two cuts."""
    if app.alpha_density is None or app.beta_density is None:
        raise ValueError("jump check requires density measure")
    aa, ab = app.alpha_density.support
    ba, bb = app.beta_density.support
    J = [[1.0 + 0j, 0j, 0j], [0j, 1.0 + 0j, 0j], [0j, 0j, 1.0 + 0j]]
    if which == "gamma":
        if ba < w0 < bb:
            J[0][1] = -2j * cmath.pi * app.beta_density.density_at(w0)
        elif aa < -w0 < ab:
            J[1][2] = -2j * cmath.pi * app.alpha_density.density_at(-w0)
        else:
            raise ValueError(f"{w0} is not interior to either cut of gamma")
    else:
        if aa < w0 < ab:
            J[0][1] = -2j * cmath.pi * app.alpha_density.density_at(w0)
        elif ba < -w0 < bb:
            J[1][2] = -2j * cmath.pi * app.beta_density.density_at(-w0)
        else:
            raise ValueError(f"{w0} is not interior to either cut of gamma_hat")
    return J


def jump_residual(app: Apparatus, n: int, w0: float, eps: float,
                  which: str = "gamma") -> float:
    """max |Gamma_+ - Gamma_- J(w0)| over entries, relative to the largest
    entry of Gamma_-, with Gamma(w0 +- i eps) evaluated by the split
    transform.  Expected O(eps) + quadrature error.

    Relative, because the absolute entry scale carries arbitrary row
    normalizations (1/h factors) that say nothing about the jump."""
    J = jump_matrix(app, w0, which)
    gp = boundary_matrix(app, n, complex(w0, eps), which)
    gm = boundary_matrix(app, n, complex(w0, -eps), which)
    scale = max(abs(gm[i][j]) for i in range(3) for j in range(3))
    worst = 0.0
    for i in range(3):
        for j in range(3):
            pred = sum(gm[i][k] * J[k][j] for k in range(3))
            worst = max(worst, abs(gp[i][j] - pred))
    return worst / max(scale, 1.0)


def two_sided_difference(app: Apparatus, n: int, w0: float, eps: float,
                         which: str = "gamma") -> float:
    """max |Gamma(w0 + i eps) - Gamma(w0 - i eps)|: tends to zero off the
    cuts (analyticity), used as the control experiment for jump_residual."""
    gp = boundary_matrix(app, n, complex(w0, eps), which)
    gm = boundary_matrix(app, n, complex(w0, -eps), which)
    return max(abs(gp[i][j] - gm[i][j]) for i in range(3) for j in range(3))


def jump_slope_study(app: Apparatus, n: int, w0: float, eps_list,
                     which: str = "gamma"):
    """Residuals across an eps ladder plus the fitted log-log slope."""
    residuals = [jump_residual(app, n, w0, e, which) for e in eps_list]
    logs_e = np.log(np.array(eps_list, dtype=float))
    logs_r = np.log(np.maximum(np.array(residuals, dtype=float), 1e-300))
    slope = float(np.polyfit(logs_e, logs_r, 1)[0])
    return residuals, slope


def constant_jump_postfactor(U, V, hbar: float, w):
    """Diagonal post-multiplier turning Gamma's jumps into constants when
    the densities are exp(-U/hbar), exp(-V/hbar): e.g. the (1,2) jump
    entry -2 pi i e^{-V/hbar} times the ratio of the first two diagonal
    exponentials collapses to -2 pi i.  U is evaluated reflected (the
    second cut lives on the negative axis)."""
    u_star = peval(tuple(U), -w)
    v = peval(tuple(V), w)
    return (cmath.exp(-(2 * v + u_star) / (3 * hbar)),
            cmath.exp((v - u_star) / (3 * hbar)),
            cmath.exp((2 * u_star + v) / (3 * hbar)))
