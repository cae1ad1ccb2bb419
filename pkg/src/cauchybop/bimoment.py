"""Bimoment matrices, their minors, and total-positivity certificates.

For a kernel K and measures da, db on the positive axis the bimoment
matrix is

    I[i][j] = integral integral  x**i y**j K(x, y) da(x) db(y).

For the Cauchy kernel K(x, y) = 1/(x + y) this matrix is totally positive
whenever both measures have enough points of increase; by Fekete's
criterion strict positivity of all minors taken from consecutive rows and
consecutive columns is sufficient, which is what the certificate checks.
The certificate is restricted to consecutive-index minors precisely for
that reason; full minor enumeration is exponential.

Two independent routes compute the leading principal minors D_n:

* fraction-free (Bareiss) elimination on the matrix itself, and
* :func:`oracle_dn`, the symmetrized sum over n-tuples of atoms
  Delta(X) Delta(Y) det[K(x_i, y_j)] -- a brute-force formula that never
  sees the matrix.

Exact inputs make the agreement test literal equality.

The Cauchy kernel also satisfies a rank-one shift identity: with Lam the
upper shift matrix and a, b the moment vectors of the two measures,

    Lam I + I Lam^T = a b^T

holds entrywise, exactly.  :func:`rank_one_shift_residual` returns the
left-hand side minus the right-hand side on the window where the shift is
defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable

import numpy as np

from .errors import KernelSingularityError, TheoryViolationError
from .measure import DiscreteMeasure, moment
from .scalars import guard_precision, is_exact


@dataclass(frozen=True)
class Kernel:
    tag: str
    evaluate: Callable


def _cauchy(x, y):
    if x + y == 0:
        raise KernelSingularityError(f"kernel singularity: x + y = 0 at ({x}, {y})")
    return 1 / (Fraction(x + y) if is_exact(x) and is_exact(y) else (x + y))


CAUCHY = Kernel("Cauchy", _cauchy)


# -- exact linear algebra helpers ---------------------------------------------


def bareiss_det(rows):
    """Determinant by fraction-free elimination.

    Rational entries are cleared to integers row by row, the integer
    Bareiss recursion runs with exact divisions, and the row scalings are
    divided back out at the end.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = lcm(*(f.denominator for f in fr)) if fr else 1
        scale *= mult
        m.append([int(f * mult) for f in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
            guard_precision(max(m[i][k + 1:], key=abs, default=0))
        prev = m[k][k]
    return Fraction(sign * m[-1][-1], 1) / scale


def det(rows, exact: bool):
    if exact:
        return bareiss_det(rows)
    return float(np.linalg.det(np.array(rows, dtype=float)))


def minor(entries, row_idx, col_idx, exact: bool):
    sub = [[entries[i][j] for j in col_idx] for i in row_idx]
    return det(sub, exact)


def vandermonde(xs):
    prod = 1
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            prod *= xs[j] - xs[i]
    return prod


# -- the bimoment matrix -------------------------------------------------------


@dataclass(frozen=True)
class BimomentMatrix:
    order: int
    entries: tuple            # order x order grid, row-major
    kernel_tag: str
    exact: bool

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def leading_minors(self):
        """[D_1, ..., D_order] by fraction-free elimination (D_0 = 1 by
        convention and is not stored).  Negative values in exact mode can
        only come from corrupted input and raise."""
        cached = getattr(self, "_minors", None)
        if cached is None:
            cached = tuple(
                det([row[: n + 1] for row in self.entries[: n + 1]], self.exact)
                for n in range(self.order))
            if self.exact:
                for n, d in enumerate(cached):
                    if d < 0:
                        raise TheoryViolationError(
                            f"theory violation: leading minor D_{n + 1} = {d} < 0")
            object.__setattr__(self, "_minors", cached)
        return cached

    def shifted(self, di: int, dj: int) -> "BimomentMatrix":
        """The matrix with entries I[di+i][dj+j]: bimoments of the measures
        multiplied by x**di and y**dj."""
        n = self.order - max(di, dj)
        sub = tuple(tuple(self.entries[di + i][dj + j] for j in range(n))
                    for i in range(n))
        return BimomentMatrix(n, sub, self.kernel_tag, self.exact)


def compute_bimoments(alpha: DiscreteMeasure, beta: DiscreteMeasure,
                      kernel: Kernel = CAUCHY, N: int = 4) -> BimomentMatrix:
    """Bimoment matrix of order N as a double sum over atom pairs."""
    xs = alpha.signed_positions()
    ws_a = alpha.weights()
    ys = beta.signed_positions()
    ws_b = beta.weights()
    exact = (alpha.is_exact and beta.is_exact and kernel.tag == "Cauchy")

    if not exact and kernel.tag == "Cauchy" and len(xs) * len(ys) > 4096:
        x = np.array([float(v) for v in xs])
        y = np.array([float(v) for v in ys])
        kw = np.outer(np.array([float(w) for w in ws_a]),
                      np.array([float(w) for w in ws_b]))
        denom = x[:, None] + y[None, :]
        if np.any(denom == 0):
            raise KernelSingularityError("kernel singularity: x + y = 0")
        kw = kw / denom
        xp = np.vander(x, N, increasing=True)
        yp = np.vander(y, N, increasing=True)
        grid = np.einsum("ai,ab,bj->ij", xp, kw, yp)
        entries = tuple(tuple(float(v) for v in row) for row in grid)
        return BimomentMatrix(N, entries, kernel.tag, False)

    kw = [[kernel.evaluate(x, y) * wa * wb for y, wb in zip(ys, ws_b)]
          for x, wa in zip(xs, ws_a)]
    xpow = [[x ** i for i in range(N)] for x in xs]
    ypow = [[y ** j for j in range(N)] for y in ys]
    entries = []
    for i in range(N):
        row = []
        for j in range(N):
            s = 0
            for a in range(len(xs)):
                for b in range(len(ys)):
                    s += xpow[a][i] * ypow[b][j] * kw[a][b]
            guard_precision(s)
            row.append(s)
        entries.append(tuple(row))
    return BimomentMatrix(N, tuple(entries), kernel.tag, exact)


def leading_minors(I: BimomentMatrix):
    return I.leading_minors()


# -- total positivity ----------------------------------------------------------


@dataclass(frozen=True)
class TotalPositivityCertificate:
    passed: bool
    kmax: int
    min_minor: object                 # smallest minor seen
    min_index: tuple                  # (k, row_start, col_start) of that minor
    violation: tuple | None           # first (k, row_start, col_start, value) <= 0

    def __bool__(self):
        return self.passed


def check_total_positivity(I: BimomentMatrix, kmax: int | None = None,
                           tol: float = 0.0) -> TotalPositivityCertificate:
    """Evaluate every minor of k consecutive rows and k consecutive columns
    for k <= kmax.  A nonpositive minor is a reported outcome, not an error:
    degenerate measures legitimately produce vanishing minors.

    Exact mode (tol = 0) demands strict positivity.  With tol > 0 (float
    data, where a high-order minor may vanish below the rounding floor) a
    violation is only declared below -tol; the certificate then asserts
    "no negative minor detected", which is the most doubles can promise."""
    N = I.order
    if kmax is None:
        kmax = min(N, 6)
    kmax = min(kmax, N)
    best = None
    best_idx = None
    for k in range(1, kmax + 1):
        for a in range(N - k + 1):
            rows = range(a, a + k)
            for b in range(N - k + 1):
                value = minor(I.entries, rows, range(b, b + k), I.exact)
                if best is None or value < best:
                    best, best_idx = value, (k, a, b)
                bad = (not value > 0) if tol == 0.0 else (value < -tol)
                if bad:
                    return TotalPositivityCertificate(
                        False, kmax, best, best_idx, (k, a, b, value))
    return TotalPositivityCertificate(True, kmax, best, best_idx, None)


# -- independent oracles and identities ----------------------------------------


def oracle_dn(alpha: DiscreteMeasure, beta: DiscreteMeasure, n: int,
              kernel: Kernel = CAUCHY):
    """D_n by the symmetrized formula: sum over increasing n-tuples of atoms
    of Delta(X) Delta(Y) det[K(x_i, y_j)] times the weights.

    Independent of the elimination path in :meth:`BimomentMatrix.leading_minors`.
    Returns 0 when n exceeds an atom count (a repeated atom kills the
    Vandermonde).
    """
    if n == 0:
        return Fraction(1) if alpha.is_exact and beta.is_exact else 1.0
    if n > len(alpha) or n > len(beta):
        return Fraction(0) if alpha.is_exact and beta.is_exact else 0.0
    exact = alpha.is_exact and beta.is_exact
    xs = alpha.signed_positions()
    ws_a = alpha.weights()
    ys = beta.signed_positions()
    ws_b = beta.weights()
    total = 0
    for rows in itertools.combinations(range(len(xs)), n):
        xr = [xs[i] for i in rows]
        vx = vandermonde(xr)
        wx = 1
        for i in rows:
            wx *= ws_a[i]
        for cols in itertools.combinations(range(len(ys)), n):
            yc = [ys[j] for j in cols]
            kmat = [[kernel.evaluate(x, y) for x in xr] for y in yc]
            wy = 1
            for j in cols:
                wy *= ws_b[j]
            total += vx * vandermonde(yc) * det(kmat, exact) * wx * wy
    return total


def rank_one_shift_residual(I: BimomentMatrix, alpha: DiscreteMeasure,
                            beta: DiscreteMeasure):
    """(Lam I + I Lam^T - a b^T) on the (order-1) x (order-1) window.

    Identically zero for the Cauchy kernel, exactly so in exact mode.
    """
    n = I.order - 1
    a = [moment(alpha, j) for j in range(n)]
    b = [moment(beta, j) for j in range(n)]
    return tuple(tuple(I[i + 1, j] + I[i, j + 1] - a[i] * b[j]
                       for j in range(n)) for i in range(n))


def cauchy_determinant_residual(xs, ys):
    """Residual of the closed form for the bordered Cauchy determinant.

    For 0 < x_1 < ... < x_{n+1} and 0 < y_1 < ... < y_n, the
    (n+1) x (n+1) determinant with rows 1/(x_j + y_i) and a final row of
    ones equals Delta(X) Delta(Y) / prod_{j,k} (x_j + y_k).
    """
    if len(xs) != len(ys) + 1:
        raise ValueError("need n+1 x-points and n y-points")
    exact = all(is_exact(v) for v in xs) and all(is_exact(v) for v in ys)
    rows = [[1 / Fraction(x + y) if exact else 1.0 / (x + y) for x in xs]
            for y in ys]
    rows.append([Fraction(1) if exact else 1.0] * len(xs))
    lhs = det(rows, exact)
    denom = 1
    for x in xs:
        for y in ys:
            denom *= x + y
    rhs = vandermonde(xs) * vandermonde(ys) / (Fraction(denom) if exact else denom)
    return lhs - rhs
