"""Biorthogonal polynomial families.

Given the bimoment matrix I of a kernel pairing <a|b>, the monic families
p_n(x), q_n(y) are fixed by

    <p_n | q_m> = h_n delta_{nm},     h_n = D_{n+1} / D_n > 0,

and are produced here by the triangular (LDU) factorization of I: with
I = L diag(h) U for unit triangular L, U, the coefficient triangles are
S_p = L^{-1} and S_q = U^{-T}, so p = S_p [x] and q = S_q [y] in the
monomial basis.  This reuses the leading principal blocks directly, and in
exact mode every statement below is literal rational equality.

An independent construction -- cofactor expansion of the bordered
determinant formulas -- is provided as :func:`determinantal_oracle` and
must coincide with the factorization path coefficient by coefficient.

The exact pipeline works exclusively with monic data (and the rescaled
family q_n / h_n, which pairs with monic p_n to a biorthoNORMAL system
without any square roots).  Normalized quantities p_n/sqrt(h_n) and the
constants c_n = sqrt(h_n) exist only in the float layer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .bimoment import BimomentMatrix, minor
from .errors import DegenerateMatrixError, TheoryViolationError
from .measure import DiscreteMeasure, moment
from .polys import peval, pscale
from .scalars import scalar_sqrt


def pair(I: BimomentMatrix, a_coeffs, b_coeffs):
    """<a|b> for polynomials a(x), b(y) given by coefficient lists."""
    total = 0
    for i, ca in enumerate(a_coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b_coeffs):
            if cb == 0:
                continue
            total += ca * cb * I[i, j]
    return total


def _ldu(I: BimomentMatrix, size: int):
    """Doolittle LDU with unit triangles; pivots are h_0, ..., h_{size-1}.

    No pivoting: for valid Cauchy input the matrix is totally positive, all
    leading minors are positive and unpivoted elimination is the stable
    choice (and in exact mode stability is moot).
    """
    L = [[Fraction(0)] * size for _ in range(size)]
    U = [[Fraction(0)] * size for _ in range(size)]
    d = [None] * size
    for k in range(size):
        acc = I[k, k] - sum(L[k][m] * d[m] * U[m][k] for m in range(k))
        if acc == 0:
            raise DegenerateMatrixError(k + 1)
        d[k] = acc
        L[k][k] = 1
        U[k][k] = 1
        for i in range(k + 1, size):
            L[i][k] = (I[i, k] - sum(L[i][m] * d[m] * U[m][k] for m in range(k))) / acc
        for j in range(k + 1, size):
            U[k][j] = (I[k, j] - sum(L[k][m] * d[m] * U[m][j] for m in range(k))) / acc
    return L, d, U


def _invert_unit_lower(L, size):
    inv = [[0] * size for _ in range(size)]
    for i in range(size):
        inv[i][i] = 1
        for j in range(i - 1, -1, -1):
            inv[i][j] = -sum(L[i][m] * inv[m][j] for m in range(j, i))
    return inv


@dataclass(frozen=True)
class PolynomialFamily:
    """Coefficient triangles and norm data for degrees 0..N.

    p_monic[n], q_monic[n] hold the monic coefficients (lowest power
    first); h[n] = D_{n+1}/D_n are the exact norms; pi_monic / eta_monic
    are the measure averages of the monic polynomials once attached.
    """
    N: int
    p_monic: tuple
    q_monic: tuple
    h: tuple
    exact: bool
    pi_monic: tuple | None = None
    eta_monic: tuple | None = None

    # -- rescaled / normalized views ------------------------------------------

    def q_star(self, n: int):
        """Coefficients of q_n / h_n: the partner making (p_monic, q_star)
        a biorthonormal pair with purely rational data."""
        return pscale(self.q_monic[n], 1 / self.h[n])

    def eta_star(self, n: int):
        return self.eta_monic[n] / self.h[n]

    def c(self, n: int) -> float:
        """Normalization constant c_n = sqrt(h_n) (float layer)."""
        return scalar_sqrt(self.h[n])

    def pi_normalized(self, n: int) -> float:
        return float(self.pi_monic[n]) / self.c(n)

    def eta_normalized(self, n: int) -> float:
        return float(self.eta_monic[n]) / self.c(n)


def build_family(I: BimomentMatrix, N: int,
                 alpha: DiscreteMeasure | None = None,
                 beta: DiscreteMeasure | None = None) -> PolynomialFamily:
    """Monic biorthogonal families of degrees 0..N from the bimoment matrix.

    Requires I of order at least N+1.  If measures are supplied the average
    vectors are attached (see :func:`averages`).
    """
    size = N + 1
    if I.order < size:
        raise ValueError(f"bimoment order {I.order} too small for degree {N}")
    L, d, U = _ldu(I, size)
    sp = _invert_unit_lower(L, size)
    # S_q^T = U^{-1}: invert the unit lower triangle U^T.
    ut = [[U[j][i] for j in range(size)] for i in range(size)]
    sq = _invert_unit_lower(ut, size)
    family = PolynomialFamily(
        N=N,
        p_monic=tuple(tuple(sp[n][: n + 1]) for n in range(size)),
        q_monic=tuple(tuple(sq[n][: n + 1]) for n in range(size)),
        h=tuple(d),
        exact=I.exact,
    )
    if alpha is not None and beta is not None:
        pi, eta = averages(family, alpha, beta)
        family = replace(family, pi_monic=pi, eta_monic=eta)
    return family


def determinantal_oracle(I: BimomentMatrix, n: int):
    """Monic coefficients of (p_n, q_n) by cofactor expansion of the
    bordered determinants, bypassing the factorization entirely."""
    one = Fraction(1) if I.exact else 1.0
    D_n = minor(I.entries, range(n), range(n), I.exact) if n else one
    if D_n == 0:
        raise DegenerateMatrixError(n)
    p_coeffs = []
    for i in range(n + 1):
        m = minor(I.entries, [r for r in range(n + 1) if r != i], range(n),
                  I.exact) if n else one
        sign = -1 if (i + n) % 2 else 1
        p_coeffs.append(sign * m / D_n)
    q_coeffs = []
    for j in range(n + 1):
        m = minor(I.entries, range(n), [c for c in range(n + 1) if c != j],
                  I.exact) if n else one
        sign = -1 if (j + n) % 2 else 1
        q_coeffs.append(sign * m / D_n)
    return tuple(p_coeffs), tuple(q_coeffs)


def averages(family: PolynomialFamily, alpha: DiscreteMeasure,
             beta: DiscreteMeasure):
    """Monic averages pi_n = int p_n da, eta_n = int q_n db.

    Strict positivity is a theorem for valid input; in exact mode a
    nonpositive average is raised as a theory violation.
    """
    a_moms = [moment(alpha, j) for j in range(family.N + 1)]
    b_moms = [moment(beta, j) for j in range(family.N + 1)]
    pi = tuple(sum(c * a_moms[j] for j, c in enumerate(family.p_monic[n]))
               for n in range(family.N + 1))
    eta = tuple(sum(c * b_moms[j] for j, c in enumerate(family.q_monic[n]))
                for n in range(family.N + 1))
    if family.exact:
        for n, (p, e) in enumerate(zip(pi, eta)):
            if not (p > 0 and e > 0):
                raise TheoryViolationError(
                    f"theory violation: nonpositive average at degree {n}: "
                    f"pi={p}, eta={e}")
    return pi, eta


def evaluate(family: PolynomialFamily, which: str, n: int, point,
             basis: str = "monic"):
    """Horner evaluation of p_n or q_n at a point.

    basis="monic" stays in the exact layer; basis="normalized" divides by
    sqrt(h_n) and returns a float.
    """
    coeffs = {"p": family.p_monic, "q": family.q_monic}[which][n]
    value = peval(coeffs, point)
    if basis == "monic":
        return value
    if basis == "normalized":
        return float(value) / family.c(n)
    raise ValueError(f"unknown basis {basis!r}")
