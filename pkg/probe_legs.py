"""Per-leg dissection of _tau2_half at mu=1, alpha=0 across the flicker."""
import warnings
warnings.filterwarnings("ignore")

from flipline.landscape import ModelParams
from flipline.semiclassics import Settings
from flipline import orbits as ob

st = Settings()


def dissect(d):
    params = ModelParams(mu=1.0, alpha_d=0.0, lam=0.05, kappa=1.0)
    pc, _ = ob._canonical(params)
    g = -d
    fr = ob._frame_cached(pc, g, st)
    q3 = fr.q[2].real
    q2 = fr.q[1].real
    stops = ob._axis_stops(fr, q2, q3, with_p_stops=False)
    path = ob._axis_path(fr, q3, q2, stops)
    z_fin = path[0][1].zf(1.0)
    legs = [("start", ob._sqrt_start_leg(fr, q3, z_fin))] + path[1:-1]
    z_lst = path[-1][1].zf(0.0)
    legs.append(("end", ob._sqrt_end_leg(fr, z_lst, q2)))

    print(f"--- d = {d:.6e}  q3 = {q3:.12e}  stops = {[(f'{x:.6e}', s) for x, s in stops]}")
    total = 0.0 + 0.0j
    w = p = None
    import cmath
    for i, (kind, leg) in enumerate(legs):
        if i == 0:
            s0 = ob._SEED_S
            z = leg.zf(s0)
            w0 = cmath.sqrt(fr.B(z))
            if w0.real < 0.0 or (w0.real == 0.0 and w0.imag < 0.0):
                w0 = -w0
            p0 = cmath.sqrt(leg._r2(z, w0))
            if p0.imag < 0.0:
                p0 = -p0
            w, p = leg.march(w0, p0, s0, 1.0)
        else:
            s_stop = 1.0 - (ob._END_S if kind == "end" else 0.0)
            w, p = leg.march(w, p, 0.0, s_stop)
        t = leg.time_integral(st)
        total += t
        z0, z1 = leg.zf(0.0), leg.zf(1.0)
        print(f"  leg {i} {kind:5s} nck={len(leg.s_ck):5d} "
              f"z0=({z0.real:+.6e},{z0.imag:+.2e}) z1=({z1.real:+.6e},{z1.imag:+.2e}) "
              f"t=({t.real:+.9f},{t.imag:+.9f}) "
              f"w_end=({w.real:+.3e},{w.imag:+.3e}) p_end=({p.real:+.3e},{p.imag:+.3e})")
    print(f"  TOTAL t_half = ({total.real:+.9f}, {total.imag:+.9f})")
    return total


for d in (1.0500e-7, 1.0550e-7, 1.0600e-7, 1.0650e-7):
    dissect(d)
