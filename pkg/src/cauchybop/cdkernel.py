"""Christoffel-Darboux identities through the 3x3 commutator block.

With Pi_n the projector onto indices 0..n-1 the plain and hatted kernels
satisfy

    (x + y) sum_{j<n} q_j(y) p_j(x)         = q^T(y) B_n(-y) phat(x)
    (x + y) sum_{j<n} qhat_j(y) phat_j(x)   = q^T(y) B_n(x)  phat(x)

where B_n(s) = [Pi, (-s - Y^T) Lhat] has exactly four nonzero entries,
sitting in rows n-1..n+1 and columns n-2..n:

    row n-1:  (0,              0,                         Ahat[n-1][n])
    row n:    (-Ahat[n][n-2],  s/eta_n - Ahat[n][n-1],    0)
    row n+1:  (0,              -Ahat[n+1][n-1],           0)

The identities are evaluated through this block acting on 3-windows, so
the semi-infinite projector is never materialized and truncation error is
exactly zero.  The block builder is cross-checked against a dense
commutator formed on the whole stored truncation.  All arithmetic happens
in the rescaled biorthonormal frame, where both sides are rational.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundle import Apparatus
from .errors import TheoryViolationError
from .polys import peval


@dataclass(frozen=True)
class CommutatorBlock:
    """The 3x3 nontrivial block of [Pi_n, (-s - Y^T) Lhat], degree 1 in s.

    ``constant`` and ``slope`` give the block as constant + s * slope;
    rows are indices n-1..n+1 and columns n-2..n of the ambient operator.
    """
    n: int
    constant: tuple
    slope: tuple
    row_offset: int
    col_offset: int

    def at(self, s):
        return tuple(tuple(self.constant[i][j] + s * self.slope[i][j]
                           for j in range(3)) for i in range(3))


def commutator_block(app: Apparatus, n: int) -> CommutatorBlock:
    """Build the block from the four Ahat entries; needs 2 <= n <= N-1."""
    app.require_window(n)
    Ah = app.Ahat
    zero = 0 * Ah[0, 0]
    const = ((zero, zero, Ah[n - 1, n]),
             (-Ah[n, n - 2], -Ah[n, n - 1], zero),
             (zero, -Ah[n + 1, n - 1], zero))
    slope_mid = 1 / app.family.eta_star(n)
    slope = ((zero, zero, zero),
             (zero, slope_mid, zero),
             (zero, zero, zero))
    return CommutatorBlock(n, const, slope, n - 1, n - 2)


def dense_commutator(app: Apparatus, n: int, s):
    """[Pi_n, (-s - Y^T) Lhat] on the full stored truncation.

    Columns run only to N-1 (one column of the product is eaten by the
    shift in Lhat); within that window the result is exact.
    """
    size = app.N + 1
    Y = app.Y.entries
    Lh = app.Lhat.entries
    M = [[sum((-s * (1 if i == k else 0) - Y[k][i]) * Lh[k][j]
              for k in range(size))
          for j in range(size - 1)] for i in range(size)]
    return tuple(tuple(M[i][j] * ((1 if i < n else 0) - (1 if j < n else 0))
                       for j in range(size - 1)) for i in range(size))


def verify_block_against_dense(app: Apparatus, n: int, s,
                               rtol: float = 0.0) -> None:
    """Agreement of the 4-entry block with the dense commutator, and
    vanishing of every other entry in the valid window.  Exact equality by
    default; rtol > 0 allows rounding dust relative to the block scale
    (float data)."""
    block = commutator_block(app, n).at(s)
    dense = dense_commutator(app, n, s)
    tol = rtol * max(abs(block[i][j]) for i in range(3) for j in range(3))
    for i in range(len(dense)):
        for j in range(len(dense[0])):
            bi, bj = i - (n - 1), j - (n - 2)
            expected = block[bi][bj] if 0 <= bi < 3 and 0 <= bj < 3 else 0
            if abs(dense[i][j] - expected) > tol:
                raise TheoryViolationError(
                    f"commutator mismatch at ({i},{j}): dense {dense[i][j]} "
                    f"vs block {expected}")


def _window_product(app: Apparatus, n: int, s, q_values, phat_values):
    """q-window . block(s) . phat-window with windows (n-1..n+1), (n-2..n)."""
    block = commutator_block(app, n).at(s)
    total = 0
    for i in range(3):
        qv = q_values[n - 1 + i]
        if qv == 0:
            continue
        for j in range(3):
            if block[i][j] != 0:
                total += qv * block[i][j] * phat_values[n - 2 + j]
    return total


def cd_residual_plain(app: Apparatus, n: int, x, y, relative: bool = False):
    """LHS - RHS of the plain identity at (x, y); exactly zero in exact
    mode.  relative=True divides by max(1, |LHS|, |RHS|), the sensible
    scaling for float data where the rescaled q values carry 1/h factors."""
    app.require_window(n)
    fam = app.family
    q_values = [peval(fam.q_star(k), y) for k in range(n + 2)]
    phat_values = [peval(app.hatted.p_hat[k], x) for k in range(n + 1)]
    kernel_sum = sum(q_values[j] * peval(fam.p_monic[j], x) for j in range(n))
    lhs = (x + y) * kernel_sum
    rhs = _window_product(app, n, -y, q_values, phat_values)
    if relative:
        return abs(lhs - rhs) / max(1, abs(lhs), abs(rhs))
    return lhs - rhs


def cd_residual_hat(app: Apparatus, n: int, x, y, relative: bool = False):
    """LHS - RHS of the hatted identity at (x, y); same block, evaluated at
    s = x instead of s = -y."""
    app.require_window(n)
    fam = app.family
    q_values = [peval(fam.q_star(k), y) for k in range(n + 2)]
    phat_values = [peval(app.hatted.p_hat[k], x) for k in range(n + 1)]
    kernel_sum = sum(peval(app.hatted.q_hat[j], y) * phat_values[j]
                     for j in range(n))
    lhs = (x + y) * kernel_sum
    rhs = _window_product(app, n, x, q_values, phat_values)
    if relative:
        return abs(lhs - rhs) / max(1, abs(lhs), abs(rhs))
    return lhs - rhs
