"""Tests for level quantization, Fourier amplitudes of the lowering
operator, and dissipative transition rates.

Frozen reference values were produced by this implementation and
cross-checked by a second route where one exists: Fourier amplitudes
against direct trapezoid coefficients on the integrated orbit, the
detailed-balance ratio against the pole positions, and the flux sum rule
against the intrawell action.
"""

import cmath
import math

import numpy as np
import pytest

from flipline import (
    LevelLadder,
    ModelParams,
    NoBoundStates,
    Settings,
    action_and_period,
    bifurcation_amplitude,
    complex_period,
    deep_well,
    detailed_balance_ratio,
    fourier_matrix_element,
    integrate_orbit,
    pole_positions,
    quantize_well,
    shallow_well,
    stationary_points,
    transition_rates,
    well_curvatures,
)

P_REF = ModelParams(mu=0.2, alpha_d=0.1, lam=0.01, kappa=1.0)


def close(a, b, tol=1e-8):
    return abs(complex(a) - complex(b)) <= tol * max(1.0, abs(complex(b)))


# ----------------------------------------------------------------------
# level ladders
# ----------------------------------------------------------------------

def test_ladder_satisfies_quantization_rule():
    geo = stationary_points(P_REF)
    for well in ("deep", "shallow"):
        lad = quantize_well(P_REF, well)
        assert len(lad) > 0
        for k, lv in enumerate(lad):
            assert lv.n == k
            assert abs(lv.action - P_REF.lam * (lv.n + 0.5)) < 1e-12
            assert lv.omega > 0.0
            assert geo.g_min[lad.well.sigma] < lv.g < geo.g_s
        gs = [lv.g for lv in lad]
        assert all(a < b for a, b in zip(gs, gs[1:]))
        assert lad.g_of(0) == lad.levels[0].g


def test_ladder_counts_match_action_at_top():
    geo = stationary_points(P_REF)
    for well, expect in (("deep", 26), ("shallow", 16)):
        lad = quantize_well(P_REF, well)
        assert len(lad) == expect
        sigma = lad.well.sigma
        span = geo.g_s - geo.g_min[sigma]
        i_top, _, _ = action_and_period(P_REF, geo.g_s - 1e-9 * span, sigma)
        assert len(lad) == math.floor(i_top / P_REF.lam - 0.5) + 1


def test_ground_level_matches_harmonic_approximation():
    # g_0 = g_min + lam * omega_0 / 2 + O(lam^2)
    geo = stationary_points(P_REF)
    for well in ("deep", "shallow"):
        lad = quantize_well(P_REF, well)
        sigma = lad.well.sigma
        a_q, a_p = well_curvatures(P_REF, sigma)
        pred = geo.g_min[sigma] + 0.5 * P_REF.lam * math.sqrt(a_q * a_p)
        assert abs(lad.g_of(0) - pred) < 2.0 * P_REF.lam ** 2


def test_level_count_difference_tracks_bias():
    # I_deep - I_shallow = alpha_d at fixed g, so the ladders differ by
    # about alpha_d / lam levels
    p = ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=1.0)
    n_deep = len(quantize_well(p, "deep"))
    n_shallow = len(quantize_well(p, "shallow"))
    assert n_deep - n_shallow == round(p.alpha_d / p.lam) == 2


def test_no_bound_states_when_lam_exceeds_well_action():
    p = ModelParams(mu=0.2, alpha_d=0.1, lam=5.0, kappa=1.0)
    with pytest.raises(NoBoundStates):
        quantize_well(p, "deep")


def test_missing_well_raises():
    # far beyond the bifurcation bias only the sigma = +1 well survives
    p = ModelParams(mu=0.2, alpha_d=0.6, lam=0.01, kappa=1.0)
    with pytest.raises(NoBoundStates):
        quantize_well(p, -1)


def test_single_well_ladder_and_rates():
    p = ModelParams(mu=0.2, alpha_d=0.6, lam=0.01, kappa=1.0)
    lad = quantize_well(p, 1)
    assert len(lad) == 58
    for lv in lad:
        assert abs(lv.action - p.lam * (lv.n + 0.5)) < 1e-12
    gs = [lv.g for lv in lad]
    assert all(a < b for a, b in zip(gs, gs[1:]))
    tbl = transition_rates(p, lad)
    n0 = len(lad) // 2
    assert tbl.rate(n0, -1) > tbl.rate(n0, 1) > 0.0


# ----------------------------------------------------------------------
# Fourier amplitudes: dual route and frozen magnitudes
# ----------------------------------------------------------------------

def _direct_fourier(params, g, m, well, n_samples=4096):
    """Trapezoid Fourier coefficient of (P - iQ)/sqrt(2 lam) over one
    real-time period of the orbit in the requested well."""
    tau0 = 0.0 + 0.0j
    if well == "shallow":
        tau0 = complex_period(params, g) / 2.0
    out = integrate_orbit(params, g, tau0=tau0, n_samples=n_samples + 1)
    a_t = (out.P[:-1] - 1j * out.Q[:-1]) / math.sqrt(2.0 * params.lam)
    k = np.arange(n_samples)
    return complex(np.mean(a_t * np.exp(-2j * np.pi * m * k / n_samples)))


def test_pole_sum_matches_direct_fourier_integral():
    for well in ("deep", "shallow"):
        for m in (-3, -2, -1, 1, 2):
            a_pole = fourier_matrix_element(P_REF, -0.1, m, well)
            a_direct = _direct_fourier(P_REF, -0.1, m, well)
            assert abs(a_pole - a_direct) < 1e-7 * max(abs(a_direct), 1e-4)


FROZEN_AMPLITUDES = {
    ("deep", -3): 4.238904754282877e-01,
    ("deep", -2): 1.271606724485491e+00,
    ("deep", -1): 3.809273193272152e+00,
    ("deep", 1): 9.411176639347700e-02,
    ("deep", 2): 7.761692348156185e-04,
    ("deep", 3): 6.392328296154571e-06,
    ("shallow", -3): 1.562016120251076e-01,
    ("shallow", -2): 6.535893716553436e-01,
    ("shallow", -1): 2.727336533614580e+00,
    ("shallow", 1): 6.738147822562658e-02,
    ("shallow", 2): 3.989409246688337e-04,
    ("shallow", 3): 2.355542392039366e-06,
}


def test_fourier_magnitudes_frozen():
    for (well, m), ref in FROZEN_AMPLITUDES.items():
        a = fourier_matrix_element(P_REF, -0.1, m, well)
        assert abs(abs(a) - ref) < 1e-9 * ref


def test_fourier_exponential_decay_rates():
    # the nearest pole controls the decay: |a_{m+1}/a_m| -> exp(-Im(phi2 -
    # phi**)) for m >> 1 and exp(-Im(phi*)) for -m >> 1
    g = -0.1
    _, _, omega = action_and_period(P_REF, g, "deep")
    tau_star, tau_ss = pole_positions(P_REF, g)
    tau2 = complex_period(P_REF, g)
    down = math.exp(-omega * tau_star.imag)
    up = math.exp(-omega * (tau2.imag - tau_ss.imag))
    for m in (4, 5, 6, 7):
        r_up = abs(fourier_matrix_element(P_REF, g, m + 1, "deep")) \
            / abs(fourier_matrix_element(P_REF, g, m, "deep"))
        assert close(r_up, up, 1e-6)
        r_dn = abs(fourier_matrix_element(P_REF, g, -m - 1, "deep")) \
            / abs(fourier_matrix_element(P_REF, g, -m, "deep"))
        assert close(r_dn, down, 1e-6)


def test_symmetric_bias_gives_equal_magnitudes():
    p = ModelParams(mu=0.2, alpha_d=0.0, lam=0.01, kappa=1.0)
    for m in (-2, -1, 1, 2):
        a_plus = fourier_matrix_element(p, -0.15, m, 1)
        a_minus = fourier_matrix_element(p, -0.15, m, -1)
        assert close(abs(a_plus), abs(a_minus), 1e-9)


def test_flux_sum_rule():
    # sum_m m |a_m|^2 = -I(g) / lam in either well
    for well in ("deep", "shallow"):
        lad_sigma = deep_well(P_REF).sigma if well == "deep" \
            else shallow_well(P_REF).sigma
        act, _, _ = action_and_period(P_REF, -0.1, lad_sigma)
        total = sum(m * abs(fourier_matrix_element(P_REF, -0.1, m, well)) ** 2
                    for m in range(-60, 61) if m != 0)
        assert close(total, -act / P_REF.lam, 1e-9)


def test_harmonic_limit_amplitude_ratios():
    # near the bottom |a_-1| / sqrt(nbar) -> (r + 1/r)/2 and |a_+1| /
    # sqrt(nbar) -> |r - 1/r|/2 with r = (A_Q / A_P)^(1/4)
    p = ModelParams(mu=0.5, alpha_d=0.2, lam=0.01, kappa=1.0)
    sigma = deep_well(p).sigma
    a_q, a_p = well_curvatures(p, sigma)
    r = (a_q / a_p) ** 0.25
    g = stationary_points(p).g_min[sigma] + 1e-5
    act, _, _ = action_and_period(p, g, sigma)
    nbar = act / p.lam
    down = abs(fourier_matrix_element(p, g, -1, sigma)) / math.sqrt(nbar)
    upward = abs(fourier_matrix_element(p, g, 1, sigma)) / math.sqrt(nbar)
    assert close(down, 0.5 * (r + 1.0 / r), 1e-4)
    assert close(upward, 0.5 * abs(r - 1.0 / r), 1e-4)


def test_equal_curvatures_suppress_upward_amplitude():
    # at alpha_d = mu the shallow well has A_Q = A_P, so the upward
    # amplitude vanishes at the bottom and transitions only go down
    p_eq = ModelParams(mu=0.2, alpha_d=0.2, lam=0.01, kappa=1.0)
    a_q, a_p = well_curvatures(p_eq, shallow_well(p_eq).sigma)
    assert close(a_q, a_p, 1e-12)
    g_eq = stationary_points(p_eq).g_min[shallow_well(p_eq).sigma] + 1e-4
    up_eq = abs(fourier_matrix_element(p_eq, g_eq, 1, "shallow"))
    dn_eq = abs(fourier_matrix_element(p_eq, g_eq, -1, "shallow"))
    assert up_eq < 5e-6
    assert dn_eq > 0.05

    p_off = ModelParams(mu=0.2, alpha_d=0.15, lam=0.01, kappa=1.0)
    g_off = stationary_points(p_off).g_min[shallow_well(p_off).sigma] + 1e-4
    up_off = abs(fourier_matrix_element(p_off, g_off, 1, "shallow"))
    assert up_eq < 1e-2 * up_off


def test_zero_component_is_orbit_mean():
    a0 = fourier_matrix_element(P_REF, -0.1, 0, "deep")
    assert abs(a0.real) < 1e-8
    assert close(a0.imag, -5.3527963608075915, 1e-8)


# ----------------------------------------------------------------------
# transition rates
# ----------------------------------------------------------------------

def test_rate_table_frozen_values():
    lad = quantize_well(P_REF, "deep")
    assert close(lad.g_of(13), -0.18489565719899814, 1e-10)
    tbl = transition_rates(P_REF, lad)
    assert close(tbl.rate(13, -2), 1.589973325534005e+00, 1e-9)
    assert close(tbl.rate(13, -1), 2.346667688258941e+01, 1e-9)
    assert close(tbl.rate(13, 1), 1.828156391623088e-03, 1e-9)
    assert close(tbl.rate(13, 2), 9.649689556925237e-09, 1e-9)


def test_rate_table_structure():
    lad = quantize_well(P_REF, "deep")
    tbl = transition_rates(P_REF, lad)
    n_lev = len(lad)
    for (n, m), v in tbl.entries.items():
        assert 0 <= n < n_lev
        assert m != 0
        assert 0 <= n + m < n_lev
        assert v >= 0.0
    assert tbl.m_max >= 3
    assert tbl.rate(13, 99) == 0.0
    # rates below the relative floor are stored as exact zeros
    floor = 1e-12 * max(tbl.entries.values())
    assert all(v == 0.0 or v >= floor for v in tbl.entries.values())
    assert tbl.rate(13, 3) == 0.0


def test_rates_scale_linearly_with_kappa():
    lad = quantize_well(P_REF, "deep")
    tbl1 = transition_rates(P_REF, lad)
    p2 = ModelParams(mu=0.2, alpha_d=0.1, lam=0.01, kappa=2.0)
    tbl2 = transition_rates(p2, quantize_well(p2, "deep"))
    for key, v in tbl1.entries.items():
        assert close(tbl2.entries[key], 2.0 * v, 1e-12)


def test_downward_rates_dominate():
    lad = quantize_well(P_REF, "deep")
    tbl = transition_rates(P_REF, lad)
    for lv in lad:
        if lv.n >= 1:
            assert tbl.rate(lv.n, -1) > 0.0
            if (lv.n, 1) in tbl.entries:
                assert tbl.rate(lv.n, -1) > tbl.rate(lv.n, 1)


def test_one_level_ladder_has_no_transitions():
    full = quantize_well(P_REF, "deep")
    single = LevelLadder(well=full.well, levels=full.levels[:1])
    tbl = transition_rates(P_REF, single)
    assert len(tbl.entries) == 0
    assert tbl.rate(0, 1) == 0.0


def test_empty_ladder_raises():
    full = quantize_well(P_REF, "deep")
    with pytest.raises(NoBoundStates):
        transition_rates(P_REF, LevelLadder(well=full.well, levels=()))


# ----------------------------------------------------------------------
# detailed balance
# ----------------------------------------------------------------------

def test_balance_ratio_matches_rate_quotient():
    # the quotient of the m-step-up to m-step-down rate out of one level
    # is an algebraic identity of the two-pole sum, so the match is exact
    lad = quantize_well(P_REF, "deep")
    tbl = transition_rates(P_REF, lad)
    for n in (5, 13, 20):
        for m in (1, 2):
            quot = tbl.rate(n, m) / tbl.rate(n, -m)
            assert close(quot, detailed_balance_ratio(P_REF, lad.g_of(n), m),
                         1e-10)


def test_balance_ratio_equals_pole_exponent():
    # ratio = exp(-m omega R') with R' = 2 Im(tau2 - tau* - tau**)
    for g in (-0.3, -0.18, -0.05):
        _, _, omega = action_and_period(P_REF, g, "deep")
        tau_star, tau_ss = pole_positions(P_REF, g)
        tau2 = complex_period(P_REF, g)
        r_prime = 2.0 * (tau2 - tau_star - tau_ss).imag
        assert r_prime > 0.0
        for m in (1, 2, 3):
            ref = math.exp(-m * omega * r_prime)
            assert close(detailed_balance_ratio(P_REF, g, m), ref, 1e-10)


def test_balance_ratio_suppresses_climbing():
    assert detailed_balance_ratio(P_REF, -0.2, 0) == 1.0
    for m in (1, 2, 4):
        assert detailed_balance_ratio(P_REF, -0.2, m) < 1.0
    with pytest.raises(ValueError):
        detailed_balance_ratio(P_REF, -0.2, -1)


def test_balance_ratio_same_for_both_wells():
    lad_s = quantize_well(P_REF, "shallow")
    tbl_s = transition_rates(P_REF, lad_s)
    n = len(lad_s) // 2
    quot = tbl_s.rate(n, 1) / tbl_s.rate(n, -1)
    assert close(quot, detailed_balance_ratio(P_REF, lad_s.g_of(n), 1), 1e-10)


def test_cycle_balance_deviation_shrinks_with_lam():
    # rates evaluated at the starting level are only approximately
    # gradient-like; around a three-level cycle the log of the forward to
    # backward product ratio shrinks with lam (away from amplitude zeros)
    def log_cycle(lam, g_target):
        p = ModelParams(mu=0.2, alpha_d=0.1, lam=lam, kappa=1.0)
        lad = quantize_well(p, "deep")
        tbl = transition_rates(p, lad)
        n = min(range(len(lad) - 2),
                key=lambda k: abs(lad.g_of(k) - g_target))
        num = tbl.rate(n, 1) * tbl.rate(n + 1, 1) * tbl.rate(n + 2, -2)
        den = tbl.rate(n, 2) * tbl.rate(n + 2, -1) * tbl.rate(n + 1, -1)
        return math.log(num / den)

    coarse = abs(log_cycle(0.01, -0.30))
    fine = abs(log_cycle(0.0025, -0.30))
    assert coarse < 0.1
    assert fine < coarse


# ----------------------------------------------------------------------
# randomized checks across the double-well domain
# ----------------------------------------------------------------------

def test_randomized_ladders_and_balance():
    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(12):
        mu = rng.uniform(-0.4, 1.2)
        alpha = rng.uniform(0.05, 0.8) * bifurcation_amplitude(mu) \
            * rng.choice([-1.0, 1.0])
        p = ModelParams(mu=mu, alpha_d=alpha, lam=0.05, kappa=1.0)
        geo = stationary_points(p)
        if not geo.saddle_transverse_ok or not geo.double_well:
            continue
        lad = quantize_well(p, "deep")
        for lv in lad:
            assert abs(lv.action - p.lam * (lv.n + 0.5)) < 1e-10
        gs = [lv.g for lv in lad]
        assert all(a < b for a, b in zip(gs, gs[1:]))
        tbl = transition_rates(p, lad)
        assert all(v >= 0.0 for v in tbl.entries.values())
        n = len(lad) // 2
        if (n, 1) in tbl.entries and tbl.rate(n, 1) > 0.0:
            quot = tbl.rate(n, 1) / tbl.rate(n, -1)
            ref = detailed_balance_ratio(p, lad.g_of(n), 1)
            assert close(quot, ref, 1e-8)
            assert quot < 1.0
        checked += 1
    assert checked >= 8
