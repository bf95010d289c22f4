"""Per-leg dissection of _tau_ss_raw with quad error estimates."""
import warnings
warnings.filterwarnings("ignore")
import cmath
import math

import numpy as np
from scipy.integrate import quad

from flipline.landscape import ModelParams
from flipline.semiclassics import Settings
from flipline import orbits as ob

st = Settings()
params = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)
pc, _ = ob._canonical(params)

import sys
bad = float(sys.argv[1]) if len(sys.argv) > 1 else 1e-8

fr = ob._frame_cached(pc, -bad, st)
q3 = fr.q[2].real
stops = ob._axis_stops(fr, -math.inf, q3, with_p_stops=True)
left_anchor = min(x for x, _ in stops) if stops else q3
q_far = left_anchor - max(2.0, fr.scale)
inner = ob._axis_stops(fr, q_far, q3, with_p_stops=True)
print("stops:", [(f"{x:.9e}", s) for x, s in inner])
path = ob._axis_path(fr, q_far, q3, inner)
legs = [("tail", ob._tail_leg(fr, q_far))] + path[:-1]
z_lst = path[-1][1].zf(0.0)
legs.append(("end", ob._sqrt_end_leg(fr, z_lst, complex(q3))))

w = p = None
total = 0.0 + 0.0j
for i, (kind, leg) in enumerate(legs):
    if i == 0:
        s0 = 1e-10
        z = leg.zf(s0)
        w0 = ob._pick(cmath.sqrt(fr.B(z)),
                      complex(-2.0 * z.real if z.real < 0 else 2.0 * z.real, 0.0))
        w0 = w0 if w0.real > 0 else -w0
        p0 = cmath.sqrt(fr.P2(z, w0))
        p0 = p0 if p0.imag <= 0.0 else -p0
        w, p = leg.march(w0, p0, s0, 1.0)
    else:
        s_stop = 1.0 - (ob._END_S if kind == "end" else 0.0)
        w, p = leg.march(w, p, 0.0, s_stop)

    def f(s, leg=leg):
        ww, pp = leg.values(s)
        return leg.dzf(s) / (pp * ww)

    val, err = quad(f, 0.0, 1.0, epsabs=st.quad_abs, epsrel=st.quad_rel,
                    limit=st.quad_limit, complex_func=True)
    total += val
    z0 = leg.zf(1e-10) if kind == "tail" else leg.zf(0.0)
    z1 = leg.zf(1.0)
    flag = " <-- GATE" if abs(err) > 1e-6 * max(1.0, abs(val)) else ""
    print(f"leg {i} {kind:5s} nck={len(leg.s_ck):5d} "
          f"z0={z0.real:+.9e} z1={z1.real:+.9e} "
          f"t=({val.real:+.9f},{val.imag:+.9f}) err={abs(err):.2e}{flag}")
print(f"TOTAL t_ss = ({total.real:+.9f}, {total.imag:+.9f})")
