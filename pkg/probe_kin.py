import math, time
import warnings
warnings.filterwarnings("ignore")
from flipline import (
    ModelParams, bifurcation_amplitude, quantize_well, stationary_points,
    transition_rates,
)
from flipline.config import DEFAULT
from flipline import kinetics as K

t0 = time.perf_counter()

# FD susceptibility via delta at mu = 0.5
p = ModelParams(mu=0.5, alpha_d=1e-3, lam=0.05, kappa=1.0)
chi = K.log_susceptibility(0.5)
d = K.delta_activation(p, DEFAULT)
print("chi(0.5) =", repr(chi))
print("delta(0.5,1e-3) =", repr(d), " FD rel err:", abs(d / (2e-3 * chi) - 1.0))
print(f"[{time.perf_counter()-t0:.1f}s]")

# identity chi = sqrt(mu+1) * R'(g_min; alpha=0)
for mu in (0.2, 0.5, 1.0, -0.5):
    p0 = ModelParams(mu=mu, alpha_d=0.0, lam=0.05, kappa=1.0)
    lhs = K.log_susceptibility(mu)
    rhs = math.sqrt(mu + 1.0) * K.r_prime_at_minimum(p0, +1)
    print(f"mu={mu}: chi={lhs!r} sqrt(mu+1)*R'0={rhs!r} diff={abs(lhs-rhs):.2e}")

# activation energies at the reference point
pr = ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=1.0)
t1 = time.perf_counter()
ra_p = K.activation_energy(pr, +1)
ra_m = K.activation_energy(pr, -1)
dd = K.delta_activation(pr)
t2 = time.perf_counter()
print("R_A(+1) =", repr(ra_p))
print("R_A(-1) =", repr(ra_m))
print("delta =", repr(dd), " |delta-(RA+-RA-)| =", abs(dd - (ra_p - ra_m)),
      f"[{t2-t1:.1f}s]")

# prebifurcation scaling at mu = 0.5
mu = 0.5
ab = bifurcation_amplitude(mu)
print("alpha_B(0.5) =", repr(ab))
for da in (-0.02, -0.008, -0.002):
    ps = ModelParams(mu=mu, alpha_d=ab + da, lam=0.05, kappa=1.0)
    t3 = time.perf_counter()
    ra_s = K.activation_energy(ps, -1)
    closed = K.prebifurcation_activation(mu, da)
    print(f"da={da}: R_A(shallow)={ra_s!r} closed={closed!r} "
          f"ratio={ra_s/closed:.6f} [{time.perf_counter()-t3:.1f}s]")

# area-formula route near the bifurcation
da = -5e-4
ps = ModelParams(mu=mu, alpha_d=ab + da, lam=0.05, kappa=1.0)
geo = stationary_points(ps)
g_min_s = geo.g_min[-1]
span = geo.g_s - g_min_s
g_test = g_min_s + 1e-6 * span
area = K.area_formula_rprime(ps, g_test, -1)
rp0 = K.r_prime_at_minimum(ps, -1)
print("area route:", repr(area), " bottom closed form:", repr(rp0),
      " prebif limit:", 6.0 / (2.0 - mu))
print("  area/bottom-1:", abs(area / rp0 - 1.0),
      " area/4-1:", abs(area / 4.0 - 1.0))
g_mid = g_min_s + 0.4 * (geo.g_s - g_min_s)
area_mid = K.area_formula_rprime(ps, g_mid, -1)
rp_mid = K.r_prime(ps, g_mid)
print("  mid-pocket area:", repr(area_mid), " direct:", repr(rp_mid),
      " rel:", abs(area_mid / rp_mid - 1.0))

# quasistationary distribution at lam = 0.05
t4 = time.perf_counter()
lad = quantize_well(pr, "deep")
rates = transition_rates(pr, lad)
prof = K.quasistationary_distribution(pr, lad, rates)
print("deep ladder levels:", len(lad))
print("slope_discrepancy:", repr(prof.slope_discrepancy))
print("rho:", [f"{x:.3e}" for x in prof.rho])
print("rho_balance:", [f"{x:.3e}" for x in prof.rho_balance])
print("R:", [f"{x:.6f}" for x in prof.R])
print("normalization:", repr(prof.normalization), f"[{time.perf_counter()-t4:.1f}s]")

# switching rate estimate
est = K.switching_rate_estimate(pr)
print("est.r_a:", dict(est.r_a))
print("est.delta_r_a:", repr(est.delta_r_a))
print("est.population_ratio_exponent:", repr(est.population_ratio_exponent))
print("est.w_sw:", dict(est.w_sw))

# resonance offsets
print("res(0.1, lam=0.05):", K.resonance_offsets(pr))
p_off = ModelParams(mu=0.2, alpha_d=0.08, lam=0.05, kappa=1.0)
print("res(0.08, lam=0.05):", K.resonance_offsets(p_off))
p_one = ModelParams(mu=0.2, alpha_d=0.05, lam=0.05, kappa=1.0)
print("res(0.05, lam=0.05):", K.resonance_offsets(p_one))

# log-divergence growth law of the bottom slope
mu0 = 0.2
vals = []
for x in (1e-3, 1e-5):
    pl = ModelParams(mu=mu0, alpha_d=mu0 - x, lam=0.05, kappa=1.0)
    from flipline import well_curvatures
    a_p, a_q = well_curvatures(pl, -1)
    v = K.r_prime_at_minimum(pl, -1)
    vals.append((x, v, a_p, a_q))
    print(f"x={x}: R'0={v!r} A_P={a_p!r} A_Q={a_q!r}")
(x1, v1, ap1, aq1), (x2, v2, ap2, aq2) = vals
pref = 0.5 * math.sqrt(ap1 * aq1)
print("log growth check:", (v1 - v2) * pref, " vs log(x2/x1) =",
      math.log(x2 / x1), " ratio:", (v1 - v2) * pref / math.log(x2 / x1))

print(f"total [{time.perf_counter()-t0:.1f}s]")
