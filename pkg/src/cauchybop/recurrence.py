"""Multiplication operators, banded factors, and the hatted families.

Everything here lives in the rescaled biorthonormal frame: p_n monic and
q*_n = q_n / h_n, so that <p_i | q*_j> = delta_ij with purely rational
data.  That frame is a positive diagonal conjugation of the normalized
(sqrt-h) one, so band supports, minor signs, vanishing residuals and
eigenvalues are all unchanged, while every identity below can be asserted
as exact equality of rationals.

The operators:

    X[i][j] = <x p_i | q*_j>            (lower Hessenberg, unit supradiagonal)
    Y[i][j] = <p_j | y q*_i>            (so y q* = Y q* on truncations)
    X + Y^T = pi eta*^T                 (rank-one shift, exact)

    L    = (Lam - Id) D_pi^{-1}                (support [0, 1])
    Lhat = D_eta*^{-1} (Lam^T - Id)            (support [-1, 0])
    A    = L X    in M_[-1, 2]
    Ahat = X Lhat in M_[-2, 1]
    B    = -A^T,  Bhat = -Ahat^T

Semi-infinite relations are asserted only on the window where no
truncation artifact enters: a product that reaches d entries past the
stored block is simply not formed there.

The hatted families are

    phat = Lhat^{-1} p         (phat_n = -(eta*_0 p_0 + ... + eta*_n p_n))
    qhat^T = q*^T Lhat         (qhat_n = q_{n+1}/eta_{n+1} - q_n/eta_n,
                                written with monic data; frame-invariant)

characterized by: deg qhat_n = n+1, deg phat_n = n, the beta-average of
qhat_n vanishes, the pair is biorthonormal, and the leading coefficient of
qhat_n is the reciprocal of the monic eta-average of degree n+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bimoment import BimomentMatrix, det, minor
from .bop import PolynomialFamily, pair
from .errors import (DegenerateMatrixError, OrderUnderflowError,
                     TheoryViolationError)
from .polys import peval, pscale, pshift, psub
from .scalars import scalar_sqrt


@dataclass(frozen=True)
class BandOperator:
    """Finite truncation of a semi-infinite matrix with declared band support.

    ``support=(a, b)`` asserts entries vanish unless a <= j - i <= b;
    ``valid_rows`` / ``valid_cols`` bound the window on which the entries
    are those of the semi-infinite operator (products with the shift eat
    one row or column off the stored block).
    """
    entries: tuple
    support: tuple[int, int]
    basis: str
    valid_rows: int
    valid_cols: int

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def band_violations(self, tol: float = 0.0):
        """Entries outside the declared support on the valid window."""
        out = []
        a, b = self.support
        for i in range(self.valid_rows):
            for j in range(self.valid_cols):
                if a <= j - i <= b:
                    continue
                v = self.entries[i][j]
                if (v != 0) if tol == 0.0 else (abs(v) > tol):
                    out.append((i, j, v))
        return out

    def normalized_float(self, h):
        """Entries conjugated back to the normalized (sqrt-h) basis."""
        s = [scalar_sqrt(x) for x in h]
        return tuple(
            tuple(float(self.entries[i][j]) * s[j] / s[i]
                  for j in range(self.valid_cols))
            for i in range(self.valid_rows))


def _matmul(A, B, rows, cols, inner):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(inner))
                       for j in range(cols)) for i in range(rows))


def build_XY(family: PolynomialFamily, I: BimomentMatrix):
    """Truncations X[N], Y[N] of the multiplication operators.

    Needs bimoments one order past the family degree (the x-shift bumps a
    row index).  The supradiagonal of X in this frame is identically 1 and
    the matrices are lower Hessenberg exactly.
    """
    N = family.N
    if I.order < N + 2:
        raise OrderUnderflowError(
            f"bimoment order {I.order} < {N + 2} needed for the shift")
    size = N + 1
    X = []
    Y = []
    for i in range(size):
        xp = pshift(family.p_monic[i], 1)
        X.append(tuple(pair(I, xp, family.q_star(j)) for j in range(size)))
        yq = pshift(family.q_star(i), 1)
        Y.append(tuple(sum(ca * cb * I[a, b]
                           for a, ca in enumerate(family.p_monic[j])
                           for b, cb in enumerate(yq) if cb != 0)
                       for j in range(size)))
    X = tuple(X)
    Y = tuple(Y)
    if family.exact:
        for i in range(size):
            for j in range(i + 2, size):
                if X[i][j] != 0 or Y[i][j] != 0:
                    raise TheoryViolationError(
                        f"theory violation: Hessenberg shape broken at ({i},{j})")
            if i + 1 < size and not (X[i][i + 1] > 0 and Y[i][i + 1] > 0):
                raise TheoryViolationError(
                    "theory violation: nonpositive supradiagonal")
    bx = BandOperator(X, (-(size - 1), 1), "monic-conjugated", size, size)
    by = BandOperator(Y, (-(size - 1), 1), "monic-conjugated", size, size)
    return bx, by


def rank_one_XY_residual(X: BandOperator, Y: BandOperator,
                         family: PolynomialFamily):
    """X + Y^T - pi eta*^T on the full stored window (the identity survives
    every principal truncation, so no rows need discarding)."""
    size = X.valid_rows
    pi = family.pi_monic
    return tuple(tuple(X[i, j] + Y[j, i] - pi[i] * family.eta_star(j)
                       for j in range(size)) for i in range(size))


def build_L_Lhat(family: PolynomialFamily):
    """The bidiagonal factors, transcribed literally from their definitions.

    L row i carries -1/pi_i at (i, i) and +1/pi_{i+1} at (i, i+1); Lhat row
    i carries +1/eta*_i at (i, i-1) and -1/eta*_i at (i, i).  This placement
    is the one under which L X + L Y^T = 0 and X Lhat + Y^T Lhat = 0 hold
    exactly (verified in build_A_Ahat), which pins the convention.
    """
    size = family.N + 1
    zero = Fraction(0) if family.exact else 0.0
    L = [[zero] * size for _ in range(size)]
    Lh = [[zero] * size for _ in range(size)]
    for i in range(size):
        L[i][i] = -1 / family.pi_monic[i]
        if i + 1 < size:
            L[i][i + 1] = 1 / family.pi_monic[i + 1]
        Lh[i][i] = -1 / family.eta_star(i)
        if i - 1 >= 0:
            Lh[i][i - 1] = 1 / family.eta_star(i)
    bl = BandOperator(tuple(map(tuple, L)), (0, 1), "monic-conjugated",
                      size - 1, size)
    blh = BandOperator(tuple(map(tuple, Lh)), (-1, 0), "monic-conjugated",
                       size, size)
    return bl, blh


def build_A_Ahat(X: BandOperator, Y: BandOperator, L: BandOperator,
                 Lhat: BandOperator, family: PolynomialFamily):
    """A = L X, Ahat = X Lhat, B = -A^T, Bhat = -Ahat^T, with band supports
    enforced on the uncorrupted window.

    Also locks the sign convention of L, Lhat by checking the two vanishing
    relations L (X + Y^T) = 0 and (X + Y^T) Lhat = 0 exactly (exact mode).
    """
    size = X.valid_rows
    rows_A = size - 1            # row i of L X needs row i+1 of X
    cols_Ah = size - 1           # col j of X Lhat needs col j+1 of X
    A = _matmul(L.entries, X.entries, rows_A, size, size)
    Ahat = tuple(tuple(sum(X.entries[i][k] * Lhat.entries[k][j]
                           for k in range(size))
                       for j in range(cols_Ah)) for i in range(size))
    bA = BandOperator(A, (-1, 2), "monic-conjugated", rows_A, size)
    bAh = BandOperator(Ahat, (-2, 1), "monic-conjugated", size, cols_Ah)
    if family.exact:
        for op, name in ((bA, "A"), (bAh, "Ahat")):
            bad = op.band_violations()
            if bad:
                raise TheoryViolationError(
                    f"theory violation: band support of {name} broken at "
                    f"{bad[0][:2]} = {bad[0][2]}")
        LY = _matmul(L.entries, [list(r) for r in zip(*Y.entries)],
                     rows_A, size, size)
        for i in range(rows_A):
            for j in range(size):
                if A[i][j] + LY[i][j] != 0:
                    raise TheoryViolationError(
                        "theory violation: L X + L Y^T != 0 "
                        f"at ({i},{j}); sign convention of L is wrong")
        YtLh = _matmul([list(r) for r in zip(*Y.entries)], Lhat.entries,
                       size, cols_Ah, size)
        for i in range(size):
            for j in range(cols_Ah):
                if Ahat[i][j] + YtLh[i][j] != 0:
                    raise TheoryViolationError(
                        "theory violation: X Lhat + Y^T Lhat != 0 "
                        f"at ({i},{j}); sign convention of Lhat is wrong")
    B = tuple(tuple(-A[j][i] for j in range(rows_A)) for i in range(size))
    Bhat = tuple(tuple(-Ahat[j][i] for j in range(size))
                 for i in range(cols_Ah))
    bB = BandOperator(B, (-2, 1), "monic-conjugated", size, rows_A)
    bBh = BandOperator(Bhat, (-1, 2), "monic-conjugated", cols_Ah, size)
    return bA, bAh, bB, bBh


def four_term_residual(family: PolynomialFamily, A: BandOperator,
                       Bhat: BandOperator, n: int, point,
                       relative: bool = False):
    """Residuals of the four-term recurrences at a point, for 1 <= n.

    p-side:  x (p_n/pi_n - p_{n-1}/pi_{n-1})
               = A[n-1][n-2..n+1] . (p_{n-2}, ..., p_{n+1})
    q-side:  the same with Bhat and q*/eta* (equal to monic q/eta ratios).
    p_{-1} = q_{-1} = 0 by convention.
    """
    if not 1 <= n <= family.N - 1:
        raise OrderUnderflowError(f"four-term window needs 1 <= n <= {family.N - 1}")
    pv = [peval(family.p_monic[k], point) for k in range(family.N + 1)]
    qv = [peval(family.q_star(k), point) for k in range(family.N + 1)]
    lhs_p = point * (pv[n] / family.pi_monic[n]
                     - pv[n - 1] / family.pi_monic[n - 1])
    rhs_p = sum(A[n - 1, k] * pv[k] for k in range(max(0, n - 2), n + 2))
    lhs_q = point * (qv[n] / family.eta_star(n)
                     - qv[n - 1] / family.eta_star(n - 1))
    rhs_q = sum(Bhat[n - 1, k] * qv[k] for k in range(max(0, n - 2), n + 2))
    if relative:
        return (abs(lhs_p - rhs_p) / max(1, abs(lhs_p), abs(rhs_p)),
                abs(lhs_q - rhs_q) / max(1, abs(lhs_q), abs(rhs_q)))
    return lhs_p - rhs_p, lhs_q - rhs_q


# -- hatted families -----------------------------------------------------------


@dataclass(frozen=True)
class HattedFamily:
    """Coefficient triangles for phat_n (degree n) and qhat_n (degree n+1)."""
    N: int                      # phat degrees 0..N, qhat degrees 0..N-1
    p_hat: tuple
    q_hat: tuple
    exact: bool


def build_hatted(family: PolynomialFamily, I: BimomentMatrix,
                 beta_moments=None) -> HattedFamily:
    """phat = Lhat^{-1} p by forward substitution, qhat^T = q*^T Lhat.

    In exact mode the defining properties are verified on the spot:
    degrees, zero beta-average of qhat (when moments are supplied),
    biorthonormality <phat_n | qhat_m> = delta, and the leading coefficient
    of qhat_n against 1/eta_{n+1}.
    """
    N = family.N
    p_hat = []
    acc = ()
    for n in range(N + 1):
        acc = psub(acc, pscale(family.p_monic[n], family.eta_star(n)))
        p_hat.append(acc)
    q_hat = tuple(
        psub(pscale(family.q_monic[n + 1], 1 / family.eta_monic[n + 1]),
             pscale(family.q_monic[n], 1 / family.eta_monic[n]))
        for n in range(N))
    fam = HattedFamily(N, tuple(p_hat), q_hat, family.exact)
    if family.exact:
        for n in range(N):
            if len(q_hat[n]) != n + 2 or q_hat[n][n + 1] == 0:
                raise TheoryViolationError("theory violation: deg qhat_n != n+1")
            if q_hat[n][n + 1] * family.eta_monic[n + 1] != 1:
                raise TheoryViolationError(
                    "theory violation: leading coefficient of qhat_n")
            if beta_moments is not None:
                avg = sum(c * beta_moments[k] for k, c in enumerate(q_hat[n]))
                if avg != 0:
                    raise TheoryViolationError(
                        f"theory violation: beta-average of qhat_{n} = {avg}")
        for n in range(N + 1):
            for m in range(N):
                val = pair(I, p_hat[n], q_hat[m])
                if val != (1 if n == m else 0):
                    raise TheoryViolationError(
                        f"theory violation: <phat_{n}|qhat_{m}> = {val}")
    return fam


def hatted_determinantal_oracle(I: BimomentMatrix, beta_moments,
                                family: PolynomialFamily, n: int):
    """(qhat_n, phat_n) from the bordered determinants with the beta-moment
    row, expanded by cofactors; exact match with build_hatted after the
    normalization is cleared of square roots.

    The qhat prefactor 1/(eta_n eta_{n+1} sqrt(D_n D_{n+2})) collapses to
    the rational 1/(eta~_n eta~_{n+1} D_n) once the normalized averages are
    written through the monic ones.
    """
    exact = I.exact
    D = [minor(I.entries, range(k), range(k), exact) if k else
         (Fraction(1) if exact else 1.0) for k in range(n + 3)]
    if D[n + 1] == 0 or D[n + 2] == 0:
        raise DegenerateMatrixError(n + 2 if D[n + 1] != 0 else n + 1)
    # qhat_n: rows = I rows 0..n-1 then the beta row; columns 0..n+1; the
    # power row is expanded away.
    base_rows = [[I[i, j] for j in range(n + 2)] for i in range(n)]
    base_rows.append([beta_moments[j] for j in range(n + 2)])
    q_coeffs = []
    for j in range(n + 2):
        sub = [[row[c] for c in range(n + 2) if c != j] for row in base_rows]
        sign = -1 if (n + 1 + j) % 2 else 1
        q_coeffs.append(sign * det(sub, exact))
    scale_q = family.eta_monic[n] * family.eta_monic[n + 1] * D[n]
    q_hat = tuple(c / scale_q for c in q_coeffs)
    # phat_n: rows = I rows 0..n and the beta row; columns 0..n; the power
    # column (1, x, ..., x^n, 0) is expanded away.
    rows = [[I[i, j] for j in range(n + 1)] for i in range(n + 1)]
    rows.append([beta_moments[j] for j in range(n + 1)])
    p_coeffs = []
    for i in range(n + 1):
        sub = [rows[r] for r in range(n + 2) if r != i]
        sign = -1 if (i + n + 1) % 2 else 1
        p_coeffs.append(sign * det(sub, exact))
    p_hat = tuple(c / D[n + 1] for c in p_coeffs)
    return q_hat, p_hat


# -- total nonnegativity / oscillation ------------------------------------------


@dataclass(frozen=True)
class OscillationCertificate:
    tn_passed: bool
    kmax: int
    min_minor: object
    invertible: bool
    subdiagonal_positive: bool
    supradiagonal_positive: bool
    violation: tuple | None

    @property
    def oscillatory(self) -> bool:
        return (self.tn_passed and self.invertible
                and self.subdiagonal_positive and self.supradiagonal_positive)

    def __bool__(self):
        return self.oscillatory


def tn_oscillatory_certificate(M: BandOperator, kmax: int = 4,
                               exact: bool = True,
                               tol: float = 0.0) -> OscillationCertificate:
    """Total nonnegativity of all minors up to order kmax, plus the
    classical oscillation criterion: TN, invertible, and strictly positive
    first sub- and supra-diagonals.

    Minor signs are invariant under the positive diagonal conjugation
    between the rational and normalized frames, so certifying the rational
    entries certifies the normalized operator too.  tol absorbs rounding
    dust on minors that vanish identically (float data only).
    """
    size = M.valid_rows
    entries = M.entries
    kmax = min(kmax, size)
    worst = None
    violation = None
    tn = True
    for k in range(1, kmax + 1):
        for rows in combinations(range(size), k):
            for cols in combinations(range(size), k):
                v = minor(entries, rows, cols, exact)
                if worst is None or v < worst:
                    worst = v
                if v < -tol and violation is None:
                    violation = (rows, cols, v)
                    tn = False
    full = det([row[:size] for row in entries[:size]], exact)
    sub = all(entries[i + 1][i] > 0 for i in range(size - 1))
    supra = all(entries[i][i + 1] > 0 for i in range(size - 1))
    return OscillationCertificate(tn, kmax, worst, full != 0, sub, supra,
                                  violation)
