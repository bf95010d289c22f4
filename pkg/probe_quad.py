"""Check the raw quad error estimate on the pinch-spanning middle leg."""
import warnings
import cmath
import numpy as np
from scipy.integrate import quad

from flipline.landscape import ModelParams
from flipline.semiclassics import Settings
from flipline import orbits as ob

st = Settings()
print("quad_abs", st.quad_abs, "quad_rel", st.quad_rel, "limit", st.quad_limit)


def leg2(d):
    params = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)
    pc, _ = ob._canonical(params)
    fr = ob._frame_cached(pc, -d, st)
    q3, q2 = fr.q[2].real, fr.q[1].real
    stops = ob._axis_stops(fr, q2, q3, with_p_stops=False)
    path = ob._axis_path(fr, q3, q2, stops)
    z_fin = path[0][1].zf(1.0)
    legs = [("start", ob._sqrt_start_leg(fr, q3, z_fin))] + path[1:-1]
    z_lst = path[-1][1].zf(0.0)
    legs.append(("end", ob._sqrt_end_leg(fr, z_lst, q2)))
    w = p = None
    for i, (kind, leg) in enumerate(legs):
        if i == 0:
            s0 = ob._SEED_S
            z = leg.zf(s0)
            w0 = cmath.sqrt(fr.B(z))
            if w0.real < 0.0:
                w0 = -w0
            p0 = cmath.sqrt(leg._r2(z, w0))
            if p0.imag < 0.0:
                p0 = -p0
            w, p = leg.march(w0, p0, s0, 1.0)
        else:
            s_stop = 1.0 - (ob._END_S if kind == "end" else 0.0)
            w, p = leg.march(w, p, 0.0, s_stop)
        if i == 2:
            mid = leg
    return mid


for d in (1.0500e-7, 1.0550e-7):
    leg = leg2(d)

    def f(s, leg=leg):
        w, p = leg.values(s)
        return leg.dzf(s) / (p * w)

    with warnings.catch_warnings(record=True) as wlist:
        warnings.simplefilter("always")
        val, err = quad(f, 0.0, 1.0, epsabs=st.quad_abs, epsrel=st.quad_rel,
                        limit=st.quad_limit, complex_func=True)
        warned = [str(x.category.__name__) for x in wlist]
    # well-resolved reference on the SAME integrand: split at the known
    # boundary-layer scales near both ends and use a huge limit
    sd = 1.0e-9
    pts = []
    for k in range(1, 28):
        x = sd * 2.0 ** k
        if x < 0.4:
            pts += [x, 1.0 - x]
    pts = sorted(set(pts))
    vr = quad(lambda s: f(s).real, 0.0, 1.0, points=pts, limit=3000,
              epsabs=1e-13, epsrel=1e-13)
    vi = quad(lambda s: f(s).imag, 0.0, 1.0, points=pts, limit=3000,
              epsabs=1e-13, epsrel=1e-13)
    ref = complex(vr[0], vi[0])
    referr = abs(vr[1]) + abs(vi[1])
    print(f"d={d:.4e}  plain=({val.real:+.9f},{val.imag:+.9f}) err={abs(err):.2e} "
          f"warn={warned}")
    print(f"            ref  =({ref.real:+.9f},{ref.imag:+.9f}) referr={referr:.2e} "
          f"diff={abs(val - ref):.3e}")
