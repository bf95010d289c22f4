"""Activation energy at mu=1 alpha=0 (former >590 s grind) and FD pair."""
import warnings
warnings.filterwarnings("ignore")
import time

from flipline import ModelParams, activation_energy, delta_activation
from flipline.semiclassics import Settings

st = Settings()

t0 = time.time()
p0 = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)
ra_p = activation_energy(p0, +1, st)
ra_m = activation_energy(p0, -1, st)
print(f"mu=1 a=0:    R_A(+1) = {ra_p:.12f}  R_A(-1) = {ra_m:.12f}  "
      f"({time.time() - t0:.1f} s)")
print(f"             symmetric diff = {abs(ra_p - ra_m):.3e}")

t0 = time.time()
p1 = ModelParams(mu=1.0, alpha_d=1e-3, lam=0.05, kappa=1.0)
d1 = delta_activation(p1, st)
print(f"mu=1 a=1e-3: delta = {d1:.15f}  ({time.time() - t0:.1f} s)")
chi_exact = 1.7627471740390857
fd = d1 / (2.0 * 1e-3)
print(f"             FD chi = {fd:.12f}  vs exact {chi_exact:.12f}  "
      f"rel {abs(fd - chi_exact) / chi_exact:.3e}")
