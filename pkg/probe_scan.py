"""R' smoothness scan over the former flicker zone and small-d anchors."""
import warnings
warnings.filterwarnings("ignore")
import time

import numpy as np

from flipline import ModelParams, r_prime
from flipline.semiclassics import Settings

st = Settings()
params = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)

print("fine scan d in [1.00e-7, 1.30e-7]:")
ds = np.linspace(1.00e-7, 1.30e-7, 31)
vals = []
t0 = time.time()
for d in ds:
    vals.append(r_prime(params, -float(d), st))
print(f"  {len(ds)} evals in {time.time() - t0:.1f} s")
vals = np.array(vals)
# second difference as a smoothness witness
d2 = np.abs(np.diff(vals, 2))
print(f"  values[0:3]   = {vals[0]:.9f} {vals[1]:.9f} {vals[2]:.9f}")
print(f"  values[-3:]   = {vals[-3]:.9f} {vals[-2]:.9f} {vals[-1]:.9f}")
print(f"  max |second difference| = {d2.max():.3e} (smooth if << first diff "
      f"{np.abs(np.diff(vals)).mean():.3e})")

print("small-d anchors:")
for d in (1e-2, 1e-4, 1e-6, 1e-8):
    t0 = time.time()
    v = r_prime(params, -d, st)
    print(f"  d={d:.0e}  R' = {v:.9f}   ({time.time() - t0:.3f} s)")
