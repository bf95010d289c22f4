"""Tests for the quasienergy landscape: stationary points, classification,
critical values, and the bifurcation threshold."""

import math

import numpy as np
import pytest

from flipline import (
    ModelParams,
    SingleWellRegime,
    bifurcation_amplitude,
    critical_quasienergy,
    deep_well,
    eval_g,
    shallow_well,
    stationary_points,
    well_curvatures,
)


def test_eval_g_scalar_and_array():
    p = ModelParams(mu=0.5, alpha_d=0.2, lam=0.02, kappa=1.0)
    val = eval_g(p, 1.0, 0.0)
    expected = 0.25 * (1.0 - 0.5) ** 2 + 0.5 * (-1.0) - 0.5 ** 2 / 4 - 0.2 * 1.0
    assert math.isclose(float(val), expected, rel_tol=1e-14)

    Q = np.array([0.0, 1.0, -1.0])
    P = np.array([0.0, 0.5, 0.5])
    vals = eval_g(p, Q, P)
    assert vals.shape == (3,)
    assert math.isclose(float(vals[0]), 0.25 * 0.25 - 0.0625, rel_tol=1e-14)


def test_eval_g_complex_arguments():
    p = ModelParams(mu=0.2, alpha_d=0.1, lam=0.02, kappa=1.0)
    v = eval_g(p, 1.0 + 0.5j, 0.3 - 0.2j)
    assert isinstance(complex(v), complex)
    # agrees with the real evaluation when imaginary parts vanish
    v2 = eval_g(p, 1.0 + 0j, 0.3 + 0j)
    assert abs(complex(v2) - float(eval_g(p, 1.0, 0.3))) < 1e-15


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(mu=0.2, alpha_d=0.1, lam=0.0, kappa=1.0)
    with pytest.raises(ValueError):
        ModelParams(mu=0.2, alpha_d=0.1, lam=0.02, kappa=-1.0)
    with pytest.raises(ValueError):
        ModelParams(mu=math.nan, alpha_d=0.1, lam=0.02, kappa=1.0)


def test_critical_quasienergy_frozen():
    p = ModelParams(mu=0.5, alpha_d=0.2, lam=0.02, kappa=1.0)
    g_c, q_c = critical_quasienergy(p)
    assert math.isclose(g_c, -0.0525, rel_tol=0, abs_tol=1e-15)
    assert math.isclose(q_c, -0.1, rel_tol=0, abs_tol=1e-15)

    p2 = ModelParams(mu=0.2, alpha_d=0.1, lam=0.02, kappa=1.0)
    g_c2, _ = critical_quasienergy(p2)
    assert math.isclose(g_c2, -0.1575, rel_tol=0, abs_tol=1e-15)


def test_bifurcation_amplitude_frozen():
    assert math.isclose(bifurcation_amplitude(0.5), 0.7071067811865476,
                        rel_tol=1e-15)
    assert bifurcation_amplitude(-1.0) == 0.0
    with pytest.raises(ValueError):
        bifurcation_amplitude(-1.5)


def test_double_well_geometry_frozen():
    p = ModelParams(mu=0.5, alpha_d=0.2, lam=0.02, kappa=1.0)
    geo = stationary_points(p)
    assert geo.regime == "double-well"
    assert math.isclose(geo.q_min[1], 1.2866404255744357, rel_tol=1e-12)
    assert math.isclose(geo.q_min[-1], -1.1516678413429395, rel_tol=1e-12)
    assert math.isclose(geo.g_min[1], -0.8137874081070524, rel_tol=1e-12)
    assert math.isclose(geo.g_min[-1], -0.3246268800923739, rel_tol=1e-12)
    assert math.isclose(geo.g_s, 0.013414288199426309, rel_tol=1e-10)
    assert math.isclose(geo.q_s, -0.13497258423149622, rel_tol=1e-10)
    assert math.isclose(geo.alpha_B, 0.7071067811865476, rel_tol=1e-14)
    assert geo.double_well
    assert geo.saddle_transverse_ok

    A_P, A_Q = well_curvatures(p, +1)
    assert math.isclose(A_P, 2.1554435847223647, rel_tol=1e-12)
    assert math.isclose(A_Q, 3.466330754167095, rel_tol=1e-12)


def test_single_well_classification_near_threshold():
    p = ModelParams(mu=0.5, alpha_d=0.70711, lam=0.02, kappa=1.0)
    geo = stationary_points(p)
    assert geo.regime == "single-well"
    assert geo.g_s is None
    assert len(geo.g_min) == 1
    with pytest.raises(SingleWellRegime):
        geo.require_double_well()


def test_symmetric_wells_at_zero_bias():
    p = ModelParams(mu=0.3, alpha_d=0.0, lam=0.02, kappa=1.0)
    geo = stationary_points(p)
    target = -(1.0 + 0.3) ** 2 / 4
    assert math.isclose(geo.g_min[1], target, rel_tol=1e-13)
    assert math.isclose(geo.g_min[-1], target, rel_tol=1e-13)
    assert math.isclose(geo.q_min[1], math.sqrt(1.3), rel_tol=1e-13)
    assert math.isclose(geo.q_min[1], -geo.q_min[-1], rel_tol=1e-13)
    assert deep_well(p).role == "symmetric"
    assert shallow_well(p).role == "symmetric"


def test_deep_shallow_roles_follow_bias_sign():
    p = ModelParams(mu=0.5, alpha_d=0.2, lam=0.02, kappa=1.0)
    assert deep_well(p).sigma == 1
    assert shallow_well(p).sigma == -1
    m = ModelParams(mu=0.5, alpha_d=-0.2, lam=0.02, kappa=1.0)
    assert deep_well(m).sigma == -1
    assert shallow_well(m).sigma == 1


def test_mirror_symmetry_in_bias():
    p = ModelParams(mu=0.7, alpha_d=0.15, lam=0.02, kappa=1.0)
    m = ModelParams(mu=0.7, alpha_d=-0.15, lam=0.02, kappa=1.0)
    gp = stationary_points(p)
    gm = stationary_points(m)
    assert math.isclose(gp.q_min[1], -gm.q_min[-1], rel_tol=1e-13)
    assert math.isclose(gp.g_min[1], gm.g_min[-1], rel_tol=1e-13)
    assert math.isclose(gp.g_s, gm.g_s, rel_tol=1e-12)
    assert math.isclose(gp.q_s, -gm.q_s, rel_tol=1e-10, abs_tol=1e-12)
    assert math.isclose(gp.g_c, gm.g_c, rel_tol=1e-14)


def test_well_depth_shift_first_order_in_bias():
    # g_min(sigma) = -(mu+1)^2/4 - sigma*alpha*sqrt(mu+1) + O(alpha^2)
    mu = 0.4
    alpha = 1e-5
    p = ModelParams(mu=mu, alpha_d=alpha, lam=0.02, kappa=1.0)
    geo = stationary_points(p)
    base = -(mu + 1.0) ** 2 / 4
    shift = alpha * math.sqrt(mu + 1.0)
    assert math.isclose(geo.g_min[1], base - shift, abs_tol=1e-8)
    assert math.isclose(geo.g_min[-1], base + shift, abs_tol=1e-8)


def test_mu_out_of_range_rejected():
    p = ModelParams(mu=2.5, alpha_d=0.1, lam=0.02, kappa=1.0)
    with pytest.raises(ValueError):
        stationary_points(p)


def test_saddle_below_critical_value():
    # g_c < g_s in the double-well regime: the branch-point collision sits
    # below the saddle energy
    for mu, alpha in ((0.2, 0.1), (0.5, 0.2), (0.8, 0.3)):
        p = ModelParams(mu=mu, alpha_d=alpha, lam=0.02, kappa=1.0)
        geo = stationary_points(p)
        assert geo.g_c < geo.g_s


def test_randomized_geometry_invariants():
    rng = np.random.default_rng(20260816)
    checked = 0
    for _ in range(300):
        mu = rng.uniform(-0.9, 1.9)
        a_b = bifurcation_amplitude(mu)
        alpha = rng.uniform(-0.95, 0.95) * a_b
        p = ModelParams(mu=mu, alpha_d=alpha, lam=0.02, kappa=1.0)
        geo = stationary_points(p)
        assert geo.regime == "double-well"
        # stationary points satisfy the cubic exactly
        for q in list(geo.q_min.values()) + [geo.q_s]:
            resid = q ** 3 - (mu + 1.0) * q - alpha
            assert abs(resid) < 1e-9
        # ordering: saddle between the minima, energies ordered
        qs = sorted(geo.q_min.values())
        assert qs[0] < geo.q_s < qs[1]
        assert max(geo.g_min.values()) < geo.g_s
        # curvatures positive at the minima
        for sigma in (1, -1):
            A_P, A_Q = well_curvatures(p, sigma)
            assert A_P > 0 and A_Q > 0
        # deep well is deeper
        d = deep_well(p)
        s = shallow_well(p)
        assert geo.g_min[d.sigma] <= geo.g_min[s.sigma] + 1e-15
        checked += 1
    assert checked == 300


def test_bifurcation_threshold_by_bisection():
    # alpha_B(mu) matches the regime flip located by bisection
    for mu in (-0.5, 0.0, 0.5, 1.0, 1.5):
        a_b = bifurcation_amplitude(mu)
        lo, hi = 0.5 * a_b, 1.5 * a_b

        def is_double(alpha):
            p = ModelParams(mu=mu, alpha_d=alpha, lam=0.02, kappa=1.0)
            return stationary_points(p).regime == "double-well"

        assert is_double(lo) and not is_double(hi)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if is_double(mid):
                lo = mid
            else:
                hi = mid
        assert abs(0.5 * (lo + hi) - a_b) < 1e-10
