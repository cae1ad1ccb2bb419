import cmath
import math
from fractions import Fraction as F

import pytest

from cauchybop import (DensityMeasure, OrderUnderflowError, assemble_gamma,
                       assemble_gamma_hat, asymptotic_check, build_apparatus,
                       constant_jump_postfactor, extract_constants,
                       jump_residual, jump_slope_study, two_sided_difference)
from cauchybop.rhp import gamma_hat_series, gamma_series, jump_matrix

from .conftest import rational_points_off


@pytest.fixture(scope="module")
def appd():
    alpha = DensityMeasure(support=(1.0, 2.0), density=lambda x: 1.0, order=120)
    beta = DensityMeasure(support=(1.0, 2.0), density=lambda x: 1.0, order=120)
    return build_apparatus(alpha, beta, N=4)


# -- exact assembly -----------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_det_gamma_unity_exact(app6, six_atom_pair, n):
    for w in rational_points_off(six_atom_pair, 5):
        g = assemble_gamma(app6, n, w)
        assert g.determinant == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_gamma_hat_unity_exact(app6, six_atom_pair, n):
    for z in rational_points_off(six_atom_pair, 5):
        gh = assemble_gamma_hat(app6, n, z)
        assert gh.determinant == 1


def test_both_routes_agree_is_asserted_inside(app6):
    # route agreement check is built into assembly and raises on mismatch
    assemble_gamma(app6, 3, F(23, 2))
    assemble_gamma_hat(app6, 3, F(23, 2))


def test_gamma_rows_are_rational_combinations(app6):
    g = assemble_gamma(app6, 2, F(23, 2))
    assert all(isinstance(v, F) or v == int(v)
               for row in g.entries for v in row)


def test_middle_row_growth(app6):
    # entry (2,1) grows like w^{n-1} with coefficient 1/eta~_{n-1}
    n = 3
    grid = gamma_series(app6, n)
    assert grid[1][0].coeff(n - 1) == 1 / app6.family.eta_monic[n - 1]
    # entry (2,3) decays like w^{-n} with the alternating coefficient
    lead = grid[1][2].coeff(-n)
    expected = (-1) ** n * app6.family.h[n - 1] / app6.family.eta_monic[n - 1]
    assert lead == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_asymptotic_powers_gamma(app6, n):
    cert = asymptotic_check(app6, n, "gamma")
    assert cert.passed, cert.failures
    assert cert.diag_powers == (n, -1, -n + 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_asymptotic_powers_gamma_hat(app6, n):
    cert = asymptotic_check(app6, n, "gamma_hat")
    assert cert.passed, cert.failures
    assert cert.diag_powers == (n, 0, -n)


def test_gamma_hat_middle_column_unit_limit(app6):
    grid = gamma_hat_series(app6, 3)
    assert grid[1][1].coeff(0) == 1          # from the -1 limit of phat-aux-1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_extract_constants_round_trip(app6, n):
    c_sq, eta_sq = extract_constants(app6, n)
    fam = app6.family
    assert c_sq == fam.h[n - 1]
    assert eta_sq == fam.eta_monic[n - 1] ** 2 / fam.h[n - 1]
    # the squared float constants agree too
    assert math.isclose(float(c_sq), fam.c(n - 1) ** 2, rel_tol=1e-14)
    assert math.isclose(float(eta_sq), fam.eta_normalized(n - 1) ** 2,
                        rel_tol=1e-14)


def test_window_underflow(app6):
    with pytest.raises(OrderUnderflowError):
        assemble_gamma(app6, 1, F(10))
    with pytest.raises(OrderUnderflowError):
        assemble_gamma_hat(app6, 0, F(10))


# -- boundary values on density input ------------------------------------------------


def test_det_gamma_float_density(appd):
    g = assemble_gamma(appd, 2, 10.0)
    assert abs(g.determinant - 1) < 1e-9


def test_jump_matrix_selection(appd):
    J = jump_matrix(appd, 1.5, "gamma")
    assert J[0][1] == -2j * cmath.pi
    J2 = jump_matrix(appd, -1.5, "gamma")
    assert J2[1][2] == -2j * cmath.pi
    with pytest.raises(ValueError):
        jump_matrix(appd, 5.0, "gamma")


def test_jump_residual_linear_in_eps_first_cut(appd):
    eps = [1e-4, 1e-5, 1e-6]
    residuals, slope = jump_slope_study(appd, 2, 1.5, eps, "gamma")
    assert residuals[0] < 1e-2
    assert 0.5 <= slope <= 2.0
    assert residuals[0] > residuals[1] > residuals[2]


def test_jump_residual_second_cut(appd):
    residuals, slope = jump_slope_study(appd, 2, -1.5, [1e-4, 1e-5, 1e-6],
                                        "gamma")
    assert 0.5 <= slope <= 2.0


def test_jump_residual_gamma_hat_both_cuts(appd):
    residuals, slope = jump_slope_study(appd, 2, 1.5, [1e-4, 1e-5, 1e-6],
                                        "gamma_hat")
    assert 0.5 <= slope <= 2.0
    residuals, slope = jump_slope_study(appd, 2, -1.5, [1e-4, 1e-5, 1e-6],
                                        "gamma_hat")
    assert 0.5 <= slope <= 2.0


def test_jump_residual_potential_density():
    # non-constant density given through an exponential potential
    rho = DensityMeasure(support=(0.5, 2.0), potential=[0.1, 0.4, 0.05],
                         hbar=0.8, order=150)
    app = build_apparatus(rho, rho, N=3)
    for w0, which in ((1.1, "gamma"), (-1.2, "gamma")):
        residuals, slope = jump_slope_study(app, 2, w0, [1e-4, 1e-5, 1e-6],
                                            which)
        assert 0.5 <= slope <= 2.0
        assert residuals[0] < 1e-2


def test_analyticity_off_support(appd):
    d5 = two_sided_difference(appd, 2, 3.0, 1e-5)
    d6 = two_sided_difference(appd, 2, 3.0, 1e-6)
    assert d6 < d5 / 5          # shrinks linearly with eps off the cuts


def test_jump_requires_density(app6):
    with pytest.raises(ValueError):
        jump_residual(app6, 2, 1.5, 1e-4)


def test_constant_jump_postfactor_flattens_jumps():
    # with exp-potential densities the conjugated jump entry is -2 pi i
    U = [0.3, 0.1]
    V = [0.2, 0.05]
    hbar = 0.7
    w = 1.3
    d1, d2, d3 = constant_jump_postfactor(U, V, hbar, w)
    rho_beta = math.exp(-(V[0] + V[1] * w) / hbar)
    entry = -2j * cmath.pi * rho_beta * d2 / d1
    assert abs(entry - (-2j * cmath.pi)) < 1e-12
    # second cut: the (2,3) entry against the alpha-star density
    wneg = -1.1
    e1, e2, e3 = constant_jump_postfactor(U, V, hbar, wneg)
    rho_astar = math.exp(-(U[0] + U[1] * (-wneg)) / hbar)
    entry23 = -2j * cmath.pi * rho_astar * e3 / e2
    assert abs(entry23 - (-2j * cmath.pi)) < 1e-12


def test_unit_determinant_random_measures():
    from random import Random

    from .conftest import random_rational_measure
    for seed in (5, 17, 91):
        rng = Random(seed)
        app = build_apparatus(random_rational_measure(rng, 5),
                              random_rational_measure(rng, 5), N=4)
        w = rational_points_off([app.alpha, app.beta], 1)[0]
        assert assemble_gamma(app, 3, w).determinant == 1
        assert assemble_gamma_hat(app, 3, w).determinant == 1
        assert asymptotic_check(app, 3, "gamma").passed
        assert asymptotic_check(app, 3, "gamma_hat").passed
