from fractions import Fraction as F

import pytest

from cauchybop import (OrderUnderflowError, build_apparatus,
                       four_term_residual, hatted_determinantal_oracle,
                       moment, pair, rank_one_XY_residual,
                       tn_oscillatory_certificate)
from cauchybop.polys import peval

from .conftest import rational_points_off


def test_X_entries_worked_example(two_atom_pair):
    app = build_apparatus(*two_atom_pair, N=1)
    # <x p_0 | q*_0> = I_10 / I_00 and the y-side analogue
    assert app.X[0, 0] == F(109, 77)
    assert app.Y[0, 0] == F(131, 77)
    # rank-one check at (0,0): sum equals pi_0 eta_0 / h_0 = 240/77
    assert app.X[0, 0] + app.Y[0, 0] == F(240, 77)


def test_hessenberg_shape_and_positive_supradiagonal(app6):
    size = app6.N + 1
    h = app6.family.h
    for i in range(size):
        for j in range(i + 2, size):
            assert app6.X[i, j] == 0
            assert app6.Y[i, j] == 0
        if i + 1 < size:
            assert app6.X[i, i + 1] == 1                  # rescaled frame
            assert app6.Y[i, i + 1] == h[i + 1] / h[i]    # positive


def test_rank_one_XY_exact(app6):
    res = rank_one_XY_residual(app6.X, app6.Y, app6.family)
    assert all(v == 0 for row in res for v in row)


def test_normalized_float_view_supradiagonal_positive(app6):
    norm = app6.X.normalized_float(app6.family.h)
    for i in range(len(norm) - 1):
        assert norm[i][i + 1] > 0


def test_L_Lhat_entry_placement(app6):
    fam = app6.family
    for i in range(app6.N):
        assert app6.L[i, i] == -1 / fam.pi_monic[i]
        assert app6.L[i, i + 1] == 1 / fam.pi_monic[i + 1]
    for i in range(1, app6.N + 1):
        assert app6.Lhat[i, i] == -1 / fam.eta_star(i)
        assert app6.Lhat[i, i - 1] == 1 / fam.eta_star(i)


def test_L_annihilates_averages(app6):
    # L applied to the average vector gives shift differences that cancel
    pi = app6.family.pi_monic
    for i in range(app6.N):
        assert app6.L[i, i] * pi[i] + app6.L[i, i + 1] * pi[i + 1] == 0


def test_band_supports_exact(app6):
    assert app6.A.band_violations() == []
    assert app6.Ahat.band_violations() == []
    assert app6.A.support == (-1, 2)
    assert app6.Ahat.support == (-2, 1)


def test_B_is_minus_A_transpose(app6):
    for i in range(app6.B.valid_rows):
        for j in range(app6.B.valid_cols):
            assert app6.B[i, j] == -app6.A[j, i]
    for i in range(app6.Bhat.valid_rows):
        for j in range(app6.Bhat.valid_cols):
            assert app6.Bhat[i, j] == -app6.Ahat[j, i]


def test_four_term_recurrence_exact(app6, six_atom_pair):
    pts = rational_points_off(six_atom_pair, 20)
    for n in range(1, app6.N):
        for pt in pts:
            rp, rq = four_term_residual(app6.family, app6.A, app6.Bhat, n, pt)
            assert rp == 0 and rq == 0


def test_four_term_at_zero_and_window(app6):
    rp, rq = four_term_residual(app6.family, app6.A, app6.Bhat, 1, F(0))
    assert rp == 0 and rq == 0
    with pytest.raises(OrderUnderflowError):
        four_term_residual(app6.family, app6.A, app6.Bhat, app6.N, F(1, 2))


def test_hatted_defining_properties(app6):
    hat = app6.hatted
    fam = app6.family
    beta_moms = [moment(app6.beta, j) for j in range(app6.N + 2)]
    for n in range(app6.N):
        assert len(hat.q_hat[n]) == n + 2        # degree n + 1
        assert len(hat.p_hat[n]) == n + 1        # degree n
        # beta average of qhat vanishes
        assert sum(c * beta_moms[k] for k, c in enumerate(hat.q_hat[n])) == 0
        # leading coefficient of qhat_n
        assert hat.q_hat[n][n + 1] * fam.eta_monic[n + 1] == 1
    for n in range(app6.N + 1):
        for m in range(app6.N):
            assert pair(app6.I, hat.p_hat[n], hat.q_hat[m]) == \
                (1 if n == m else 0)


def test_phat_constant_pairing(app6):
    # <phat_n | 1> / beta_0 = -1 for every n
    beta0 = moment(app6.beta, 0)
    for n in range(app6.N + 1):
        assert pair(app6.I, app6.hatted.p_hat[n], (1,)) == -beta0


def test_phat_pairs_like_beta_moments(app6):
    # <phat_n | y^j> = -beta_j for j <= n
    for n in range(app6.N + 1):
        for j in range(n + 1):
            ypow = tuple([0] * j + [1])
            assert pair(app6.I, app6.hatted.p_hat[n], ypow) == \
                -moment(app6.beta, j)


def test_hatted_determinantal_oracle(app6):
    beta_moms = [moment(app6.beta, j) for j in range(app6.N + 2)]
    for n in range(app6.N - 1):
        qh, ph = hatted_determinantal_oracle(app6.I, beta_moms, app6.family, n)
        assert qh == app6.hatted.q_hat[n]
        assert ph == app6.hatted.p_hat[n]


def test_intertwining_relations(app6):
    # x p_i = sum_j Ahat[i][j] phat_j  and  y qhat_j = -sum_i q*_i Ahat[i][j]
    pts = [F(3, 7), F(-5, 2), F(9, 4)]
    for x in pts:
        for i in range(app6.N - 1):
            lhs = x * peval(app6.family.p_monic[i], x)
            rhs = sum(app6.Ahat[i, j] * peval(app6.hatted.p_hat[j], x)
                      for j in range(max(0, i - 2),
                                     min(app6.Ahat.valid_cols, i + 2)))
            assert lhs == rhs
    for y in pts:
        for j in range(app6.N - 2):
            lhs = y * peval(app6.hatted.q_hat[j], y)
            rhs = -sum(peval(app6.family.q_star(i), y) * app6.Ahat[i, j]
                       for i in range(max(0, j - 1), j + 3))
            assert lhs == rhs


def test_tn_oscillatory_certificate(app6):
    cert = tn_oscillatory_certificate(app6.X, kmax=4)
    assert cert.tn_passed
    assert cert.invertible
    assert cert.subdiagonal_positive and cert.supradiagonal_positive
    assert cert.oscillatory
    cert_y = tn_oscillatory_certificate(app6.Y, kmax=3)
    assert cert_y.oscillatory


def test_two_by_two_truncation_determinant_positive(two_atom_pair):
    app = build_apparatus(*two_atom_pair, N=1)
    det = app.X[0, 0] * app.X[1, 1] - app.X[0, 1] * app.X[1, 0]
    assert det > 0


def test_conjugation_invariance_of_certificate(app6):
    # the float normalized form has the same minor signs
    import numpy as np
    norm = np.array(app6.X.normalized_float(app6.family.h))
    rat = np.array([[float(v) for v in row] for row in app6.X.entries])
    for k in (1, 2):
        from itertools import combinations
        for rows in combinations(range(4), k):
            for cols in combinations(range(4), k):
                a = np.linalg.det(norm[np.ix_(rows, cols)])
                b = np.linalg.det(rat[np.ix_(rows, cols)])
                assert (a >= -1e-12) == (b >= -1e-12)
