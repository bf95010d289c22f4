"""Recompute every value to be frozen into tests/test_kinetics.py."""
import warnings
warnings.filterwarnings("ignore")
import time

import numpy as np

from flipline import (
    ModelParams, activation_energy, area_formula_rprime, delta_activation,
    transition_rates, log_susceptibility, prebifurcation_activation,
    quasistationary_distribution, r_prime, r_prime_at_minimum,
    resonance_offsets, quantize_well, stationary_points,
    switching_rate_estimate, wells,
)
from flipline.semiclassics import Settings
from flipline.kinetics import _band_action_integral, _confluent_points

st = Settings()
T0 = time.time()


def stamp(label, value):
    print(f"{label} = {value!r}")


# closed forms (no contours, should be unchanged)
stamp("chi(0.2)", log_susceptibility(0.2))
stamp("chi(0.5)", log_susceptibility(0.5))
stamp("chi(1.0)", log_susceptibility(1.0))
stamp("rpm(0.2,0)", r_prime_at_minimum(
    ModelParams(mu=0.2, alpha_d=0.0, lam=0.05, kappa=1.0), +1, st))
stamp("prebif(0.5,-0.01)", prebifurcation_activation(0.5, -0.01))
stamp("prebif(0.5,-0.002)", prebifurcation_activation(0.5, -0.002))

# chi identity at several mu
for mu in (0.2, 0.5, 1.0, -0.5):
    lhs = log_susceptibility(mu)
    rhs = (np.sqrt(mu + 1.0)
           * r_prime_at_minimum(ModelParams(mu=mu, alpha_d=0.0, lam=0.05,
                                            kappa=1.0), +1, st))
    stamp(f"chi_identity_rel({mu})", abs(lhs - rhs) / abs(lhs))

# bottom-limit approach (0.2, 0)
p00 = ModelParams(mu=0.2, alpha_d=0.0, lam=0.05, kappa=1.0)
geo = stationary_points(p00, st)
gmin = geo.g_min[+1]
for dg in (1e-4, 1e-5, 1e-6):
    stamp(f"rp_bottom(dg={dg:.0e})", r_prime(p00, gmin + dg, st))

# evenness
pA = ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=1.0)
pB = ModelParams(mu=0.2, alpha_d=-0.1, lam=0.05, kappa=1.0)
stamp("rp(0.2,+0.1,-0.22)", r_prime(pA, -0.22, st))
stamp("rp(0.2,-0.1,-0.22)", r_prime(pB, -0.22, st))

# R_A pins at (0.2, 0.1)
t0 = time.time()
ra_p = activation_energy(pA, +1, st)
ra_m = activation_energy(pA, -1, st)
dlt = delta_activation(pA, st)
stamp("RA(0.2,0.1,+1)", ra_p)
stamp("RA(0.2,0.1,-1)", ra_m)
stamp("delta(0.2,0.1)", dlt)
stamp("delta_vs_diff", abs(dlt - (ra_p - ra_m)))
print(f"  [RA pair took {time.time() - t0:.1f} s]")

# oddness
pA_neg = ModelParams(mu=0.2, alpha_d=-0.1, lam=0.05, kappa=1.0)
stamp("delta_odd_resid", abs(delta_activation(pA_neg, st) + dlt))

# FD susceptibility mu=0.5 via delta
p05 = ModelParams(mu=0.5, alpha_d=1e-3, lam=0.05, kappa=1.0)
d05 = delta_activation(p05, st)
stamp("delta(0.5,1e-3)", d05)
stamp("fd_rel(0.5)", abs(d05 / 2e-3 - log_susceptibility(0.5))
      / log_susceptibility(0.5))

# FD susceptibility mu=1 via delta (band route)
p10 = ModelParams(mu=1.0, alpha_d=1e-3, lam=0.05, kappa=1.0)
d10 = delta_activation(p10, st)
stamp("delta(1.0,1e-3)", d10)
stamp("fd_rel(1.0)", abs(d10 / 2e-3 - log_susceptibility(1.0))
      / log_susceptibility(1.0))

# mu=1 alpha=0 pins
p1z = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)
stamp("RA(1.0,0,+1)", activation_energy(p1z, +1, st))
for d in (1e-2, 1e-4, 1e-6, 1e-8):
    stamp(f"rp(1,0,d={d:.0e})", r_prime(p1z, -d, st))

# band cross-checks: action-difference integral vs direct quadrature
from flipline.semiclassics import Settings as _S
from scipy.integrate import quad as _quad
g1, g2 = -0.26, -0.22
band = _band_action_integral(p00, g1, g2, st)
direct = _quad(lambda g: r_prime(p00, g, st), g1, g2, limit=200)[0]
stamp("band_rel(0.2)", abs(band - direct) / abs(direct))
g1, g2 = -0.9, -0.5
band = _band_action_integral(p10, g1, g2, st)
direct = _quad(lambda g: r_prime(p10, g, st), g1, g2, limit=200)[0]
stamp("band_rel(1.0)", abs(band - direct) / abs(direct))

# confluent points
stamp("confl(0.5)", _confluent_points(
    ModelParams(mu=0.5, alpha_d=0.1, lam=0.05, kappa=1.0)))
stamp("confl(1.5, 0.2)", _confluent_points(
    ModelParams(mu=1.5, alpha_d=0.2, lam=0.05, kappa=1.0)))

# mesh invariance: tight settings
tight = Settings(quad_rel=1e-12, quad_abs=1e-14)
stamp("mesh_invariance(0.2)", abs(r_prime(pA, -0.22, st)
                                  - r_prime(pA, -0.22, tight)))

# prebifurcation scaling
vals = {}
for da in (-0.02, -0.008, -0.002):
    p = ModelParams(mu=0.5, alpha_d=0.0, lam=0.05, kappa=1.0)
    # bias is through alpha_d offset from the bifurcation alpha_B
    from flipline import bifurcation_amplitude
    aB = bifurcation_amplitude(0.5)
    pb = ModelParams(mu=0.5, alpha_d=aB + da, lam=0.05, kappa=1.0)
    ra = activation_energy(pb, -1, st)
    vals[da] = ra
    stamp(f"prebif_RA({da})", ra)
    stamp(f"prebif_ratio({da})", ra / prebifurcation_activation(0.5, da))
expo = np.log(vals[-0.02] / vals[-0.002]) / np.log(10.0)
stamp("prebif_exponent", expo)

# area formula
for da in (-1e-5, -1e-6):
    from flipline import bifurcation_amplitude
    aB = bifurcation_amplitude(0.5)
    pb = ModelParams(mu=0.5, alpha_d=aB + da, lam=0.05, kappa=1.0)
    geo_b = stationary_points(pb, st)
    g_bot = geo_b.g_min[-1]
    span = geo_b.g_s - g_bot
    g_eval = g_bot + 1e-3 * span
    area = area_formula_rprime(pb, g_eval, -1)
    rp = r_prime(pb, g_eval, st)
    stamp(f"area_rel(da={da:.0e})", abs(area - rp) / rp)

# quasistationary distribution at (0.2, 0.1, lam=0.05), deep well
pD = ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=1.0)
lad = quantize_well(pD, +1, st)
rates = transition_rates(pD, lad, st)
dist = quasistationary_distribution(pD, lad, rates, st)
stamp("dist_n_levels", len(dist.rho))
stamp("dist_rho", list(dist.rho))
stamp("dist_R", list(dist.R))
stamp("dist_norm", dist.normalization)
stamp("dist_slope_disc", dist.slope_discrepancy)

# switching rate estimate
sw = switching_rate_estimate(pD, st)
stamp("sw_r_a", sw.r_a)
stamp("sw_delta_r_a", sw.delta_r_a)
stamp("sw_exponent", sw.switching_exponent)
stamp("sw_rate", sw.w_sw)
stamp("sw_pop_ratio", sw.population_ratio_exponent)

# resonance offsets
stamp("res(0.1,0.05)", resonance_offsets(
    ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=1.0)))
stamp("res(0.08,0.05)", resonance_offsets(
    ModelParams(mu=0.2, alpha_d=0.08, lam=0.05, kappa=1.0)))
stamp("res(0.05,0.05)", resonance_offsets(
    ModelParams(mu=0.2, alpha_d=0.05, lam=0.05, kappa=1.0)))

# near-critical log growth
from flipline import critical_quasienergy
gc = critical_quasienergy(p00)
for x in (1e-3, 1e-5):
    stamp(f"rp_nearcrit(x={x:.0e})", r_prime(p00, gc - x, st))

print(f"[total {time.time() - T0:.1f} s]")
