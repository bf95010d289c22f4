"""Complex-time orbit data for intrawell motion on the quasienergy surface.

For a fixed quasienergy g the momentum on the orbit satisfies

    P^2(Q | g) = mu - 1 - Q^2 + B^(1/2)(Q),
    B(Q) = 4 Q^2 + 4 alpha_d Q + (1 - mu)^2 + 4 g
         = 4 (Q - Q_c)^2 + 4 (g - g_c),          Q_c = -alpha_d / 2,

and the equation of motion reduces to dQ/dt = P B^(1/2).  The four roots of
the quartic Q^4 - 2(mu+1) Q^2 - 4 alpha_d Q - 4 g (the turning points
q1 < q2 < q3 < q4 when all real) bound the two wells: [q1, q2] is the
sigma = -1 well and [q3, q4] the sigma = +1 well.  B has its own pair of
branch points Q_+/- = [-alpha_d +/- sqrt(alpha_d^2 - (1-mu)^2 - 4g)] / 2
which are complex for g > g_c and real (inside the interwell gap) for
g < g_c.

Real-period quantities (action I, period tau1 = 2 pi / omega) are plain
quadratures over a well interval.  Interwell quantities are contour
integrals of dQ / (P B^(1/2)) in the complex Q plane with both square roots
continued along the contour:

* tau2 (complex period): twice the traversal time from q3 to the opposite
  turning point (q2, or the complex turning point q1 when the shallow well
  has no real orbit).
* tau_star, tau_star_star: the poles of Q(t), P(t) nearest the real time
  axis.  tau_star = tau1/2 + i a with a the (regularized) travel time from
  q4 to Q -> +infinity; tau_star_star comes from the traversal that enters
  from Q -> -infinity.

Branch handling: square roots are propagated by continuity along each
contour (nearest-candidate tracking on an adaptively refined checkpoint
table).  Contours along the real axis detour around real branch points on
fixed sides, set by how the branch points reach the axis as g drops through
g_c: Q_+ arrives from Im Q > 0, so contours pass below it; Q_- arrives from
Im Q < 0, so contours pass above it.  Crossings of simple turning points on
the incoming trajectory from Q -> -infinity take the side that keeps the
intrawell stretch running forward in real time.

Endpoint square-root singularities are removed by quadratic substitutions
(Q = q + (Q1 - q) s^2); the improper tails use Q = 1/u.  All quadratures are
adaptive Gauss-Kronrod at relative tolerance Settings.quad_rel.

Internally every computation assumes alpha_d >= 0; negative bias is mapped
through the exact mirror symmetry g(Q, P; alpha_d) = g(-Q, -P; -alpha_d)
(the wells swap sigma) and results are mapped back at the API boundary.
"""

from __future__ import annotations

import cmath
import math
import sys
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp

from .config import DEFAULT, Settings
from .errors import CriticalPoint, OutsideWellRange, PoleProximity
from .landscape import (
    LandscapeGeometry,
    ModelParams,
    _as_well_sigma,
    critical_quasienergy,
    eval_g,
    stationary_points,
)

__all__ = [
    "TurningPoints",
    "OrbitData",
    "OrbitSamples",
    "turning_points",
    "momentum_branch",
    "action_and_period",
    "complex_period",
    "pole_positions",
    "orbit_data",
    "action_of_imag_time",
    "integrate_orbit",
]


# ======================================================================
# data types
# ======================================================================

@dataclass(frozen=True)
class TurningPoints:
    """Quartic turning points and momentum branch points at fixed g.

    q lists (q1, q2, q3, q4) ordered left to right by real part (ties broken
    with the Im > 0 member first).  n_real counts the real entries.
    branch_state describes Q_+/-: "real" (g < g_c), "complex" (g > g_c), or
    "degenerate" within the configured cutoff of g_c.
    """

    g: float
    q: tuple[complex, complex, complex, complex]
    q_plus: complex
    q_minus: complex
    n_real: int
    branch_state: str


@dataclass(frozen=True)
class OrbitData:
    """Bundle of orbit quantities for one well at one quasienergy."""

    g: float
    sigma: int
    action: float
    tau1: float
    omega: float
    tau2: complex
    tau_star: complex
    tau_star_star: complex
    branch_state: str


@dataclass(frozen=True)
class OrbitSamples:
    """Complex-time trajectory samples over one real period."""

    g: float
    tau0: complex
    t: np.ndarray          # complex time points tau0 + real offsets
    Q: np.ndarray          # complex
    P: np.ndarray          # complex
    conservation: float    # max relative |g(Q,P) - g| over the samples


# ======================================================================
# canonical frame (alpha_d >= 0)
# ======================================================================

def _canonical(params: ModelParams) -> tuple[ModelParams, bool]:
    if params.alpha_d >= 0.0:
        return params, False
    mirrored = ModelParams(params.mu, -params.alpha_d, params.lam, params.kappa)
    return mirrored, True


def _quartic_roots(mu: float, alpha: float, g: float, st: Settings) -> list[complex]:
    coeffs = np.array([1.0, 0.0, -2.0 * (mu + 1.0), -4.0 * alpha, -4.0 * g])
    roots = np.roots(coeffs)
    poly = np.polynomial.Polynomial(coeffs[::-1])
    dpoly = poly.deriv()
    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(2):
            d = dpoly(z)
            if abs(d) < 1e-10:
                break
            z = z - poly(z) / d
        polished.append(z)
    scale = max(1.0, float(np.max(np.abs(coeffs))))
    for z in polished:
        if abs(poly(z)) > 1e4 * st.root_residual * scale:
            raise ArithmeticError(
                f"turning-point root residual {abs(poly(z)):.2e} too large")
    return polished


def _classify_roots(roots: Sequence[complex], st: Settings) -> tuple[list[complex], int]:
    """Order roots by (Re, -Im) after snapping near-real ones to the axis."""
    scale = max(1.0, max(abs(z) for z in roots))
    snapped = []
    for z in roots:
        if abs(z.imag) < 1e-9 * scale:
            snapped.append(complex(z.real, 0.0))
        else:
            snapped.append(z)
    snapped.sort(key=lambda z: (z.real, -z.imag))
    n_real = sum(1 for z in snapped if z.imag == 0.0)
    return snapped, n_real


def _b_branch_points(mu: float, alpha: float, g: float) -> tuple[complex, complex, float]:
    """Zeros of B(z) = 4 z^2 + 4 alpha z + (1 - mu)^2 + 4 g, cancellation-free.

    The half-sum formula -alpha/2 +/- disc^(1/2)/2 loses all precision in
    the root of smaller magnitude when the constant coefficient is small
    against alpha^2, which is exactly the regime where an orbit turning
    point rides on top of a zero of B (possible for mu >= 1).  The smaller
    root is therefore recovered from the product of the roots c / 4.
    """
    c = (1.0 - mu) ** 2 + 4.0 * g
    disc = alpha * alpha - c
    if disc > 0.0:
        s = math.sqrt(disc)
        if alpha >= 0.0:
            q_minus = -0.5 * (alpha + s)
            q_plus = (0.25 * c) / q_minus
        else:
            q_plus = 0.5 * (s - alpha)
            q_minus = (0.25 * c) / q_plus
        return complex(q_plus, 0.0), complex(q_minus, 0.0), disc
    sq = cmath.sqrt(complex(disc))
    return 0.5 * (-alpha + sq), 0.5 * (-alpha - sq), disc


@dataclass
class _Frame:
    """Canonical (alpha >= 0) root data for one (params, g)."""

    mu: float
    alpha: float
    g: float
    geo: LandscapeGeometry
    q: list[complex]
    n_real: int
    kind: str            # "four-real" | "right-pair" | "above-saddle" | "none"
    q_plus: complex
    q_minus: complex
    qpm_real: bool
    g_c: float

    def B(self, z):
        """4 (z - Q_+) (z - Q_-), factored so the value keeps relative
        accuracy arbitrarily close to either zero of B."""
        if isinstance(z, complex):
            return 4.0 * (z - self.q_plus) * (z - self.q_minus)
        if self.qpm_real:
            return 4.0 * (z - self.q_plus.real) * (z - self.q_minus.real)
        d = complex(z, 0.0) - self.q_plus
        return 4.0 * (d.real * d.real + d.imag * d.imag)

    def P2(self, z, w):
        """Momentum squared given the tracked branch w of B^(1/2).

        Evaluated as -prod(z - q_i) / (z^2 + 1 - mu + w), which is exact on
        either sheet and keeps full precision near the turning points; the
        direct form mu - 1 - z^2 + w (= 2w - den) takes over where the
        denominator gets small, since it is cancellation-free exactly there.
        """
        den = z * z + 1.0 - self.mu + w
        if abs(den) < 1e-6 * max(1.0, abs(w)):
            return self.mu - 1.0 - z * z + w
        num = complex(1.0, 0.0)
        for q in self.q:
            num *= (z - q)
        return -num / den

    @property
    def scale(self) -> float:
        return max(1.0, max(abs(z) for z in self.q))


def _build_frame(params_c: ModelParams, g: float, st: Settings) -> _Frame:
    mu, alpha = params_c.mu, params_c.alpha_d
    geo = stationary_points(params_c, st)
    roots = _quartic_roots(mu, alpha, g, st)
    q, n_real = _classify_roots(roots, st)

    g_c, _ = critical_quasienergy(params_c)
    q_plus, q_minus, disc = _b_branch_points(mu, alpha, g)
    qpm_real = disc > 0.0

    if n_real == 4:
        kind = "four-real"
    elif n_real == 2:
        reals = [z.real for z in q if z.imag == 0.0]
        pair_re = [z.real for z in q if z.imag != 0.0][0]
        kind = "right-pair" if pair_re < min(reals) else "above-saddle"
    else:
        kind = "none"

    return _Frame(mu=mu, alpha=alpha, g=g, geo=geo, q=q, n_real=n_real,
                  kind=kind, q_plus=q_plus, q_minus=q_minus,
                  qpm_real=qpm_real, g_c=g_c)


def _branch_state(fr: _Frame, st: Settings) -> str:
    if abs(fr.g - fr.g_c) <= st.critical_cutoff:
        return "degenerate"
    return "real" if fr.g < fr.g_c else "complex"


# simple keyed cache for expensive per-(params, g) data ------------------

_CACHE: dict = {}


def _cached(key, builder):
    if key not in _CACHE:
        if len(_CACHE) > 8192:
            _CACHE.clear()
        _CACHE[key] = builder()
    return _CACHE[key]


def _st_key(st: Settings) -> tuple:
    return (st.quad_rel, st.quad_abs, st.quad_limit, st.critical_cutoff,
            st.degenerate_root)


# ======================================================================
# real-interval quadratures (action, period, pole tails)
# ======================================================================

def _quad_real(f: Callable[[float], float], a: float, b: float, st: Settings) -> float:
    val, err = quad(f, a, b, epsabs=st.quad_abs, epsrel=st.quad_rel,
                    limit=st.quad_limit)
    return val


def _well_interval(fr: _Frame, sigma_c: int) -> tuple[float, float]:
    if fr.kind == "four-real":
        if sigma_c > 0:
            return fr.q[2].real, fr.q[3].real
        return fr.q[0].real, fr.q[1].real
    if fr.kind == "right-pair" and sigma_c > 0:
        reals = sorted(z.real for z in fr.q if z.imag == 0.0)
        return reals[0], reals[1]
    raise OutsideWellRange(
        f"no real orbit for sigma={sigma_c} at g={fr.g:.6g}")


def _sqrtB_pos(fr: _Frame, x: float) -> float:
    b = fr.B(x)
    return math.sqrt(b) if b > 0.0 else 0.0


def _p2_plus_stable(fr: _Frame, x: float) -> float:
    """Plus-branch P^2 on the real axis in exactly factored form.

    mu - 1 - x^2 + B^(1/2) loses all precision near turning points to
    cancellation; multiplying by the conjugate gives
    P_+^2 = -prod_i (x - q_i) / (B^(1/2) + x^2 + 1 - mu), whose numerator
    vanishes exactly at the roots.  The denominator is -P_-^2 > 0 wherever
    the plus branch carries the orbit.
    """
    num = complex(1.0, 0.0)
    for z in fr.q:
        num *= (x - z)
    den = x * x + 1.0 - fr.mu + _sqrtB_pos(fr, x)
    if den <= 0.0:
        raise ArithmeticError(
            f"momentum branch denominator {den:.3e} not positive at Q={x:.6g}")
    return -num.real / den


def _p_well(fr: _Frame, x: float) -> float:
    """Intrawell momentum (positive branch) on a well interval."""
    p2 = _p2_plus_stable(fr, x)
    return math.sqrt(p2) if p2 > 0.0 else 0.0


def _cofactor(fr: _Frame, x: float, skip: int) -> float:
    """P^2 with the root factor (x - q_skip) divided out analytically.

    Returns h(x) >= 0 such that P^2(x) = (x - q_skip) * h(x) near the
    turning point q_skip (sign arranged for the adjacent well side).  The
    substitution Q = q +/- s^2 then gives |P| = s * sqrt(h) with no
    cancellation, even where q +/- s^2 rounds to q itself.
    """
    num = complex(1.0, 0.0)
    for j, z in enumerate(fr.q):
        if j != skip:
            num *= (x - z)
    den = x * x + 1.0 - fr.mu + _sqrtB_pos(fr, x)
    if den <= 0.0:
        raise ArithmeticError(
            f"momentum branch denominator {den:.3e} not positive at Q={x:.6g}")
    return abs(num.real) / den


def _root_index(fr: _Frame, x: float) -> int:
    for j, z in enumerate(fr.q):
        if z.imag == 0.0 and z.real == x:
            return j
    raise ArithmeticError(f"Q = {x:.6g} is not a turning point")


def _action_tau1(fr: _Frame, a: float, b: float, st: Settings) -> tuple[float, float]:
    """(I, tau1) over the well [a, b] via Q = a + s^2 / b - s^2 halves.

    The vanishing turning-point factor of P^2 is cancelled against s by
    hand (P = s sqrt(h)), so the integrands stay finite all the way into
    the endpoints.
    """
    ia = _root_index(fr, a)
    ib = _root_index(fr, b)
    m = 0.5 * (a + b)
    sm_a = math.sqrt(m - a)
    sm_b = math.sqrt(b - m)

    def act_lo(s):
        return 2.0 * s * s * math.sqrt(_cofactor(fr, a + s * s, ia))

    def act_hi(s):
        return 2.0 * s * s * math.sqrt(_cofactor(fr, b - s * s, ib))

    def per_lo(s):
        x = a + s * s
        return 2.0 / (math.sqrt(_cofactor(fr, x, ia)) * _sqrtB_pos(fr, x))

    def per_hi(s):
        x = b - s * s
        return 2.0 / (math.sqrt(_cofactor(fr, x, ib)) * _sqrtB_pos(fr, x))

    action = (_quad_real(act_lo, 0.0, sm_a, st)
              + _quad_real(act_hi, 0.0, sm_b, st)) / math.pi
    tau1 = 2.0 * (_quad_real(per_lo, 0.0, sm_a, st)
                  + _quad_real(per_hi, 0.0, sm_b, st))
    return action, tau1


def _tail_time_right(fr: _Frame, q4: float, st: Settings) -> float:
    """a = int_{q4}^{inf} dQ / (|P| B^(1/2)): the Im part of tau_star."""
    i4 = _root_index(fr, q4)

    def p_abs(x):
        p2 = _p2_plus_stable(fr, x)
        return math.sqrt(-p2) if p2 < 0.0 else 0.0

    w = max(1.0, fr.scale)
    qs = q4 + w

    def near(s):
        x = q4 + s * s
        return 2.0 / (math.sqrt(_cofactor(fr, x, i4)) * _sqrtB_pos(fr, x))

    def far(u):
        x = 1.0 / u
        return 1.0 / (u * u * p_abs(x) * _sqrtB_pos(fr, x))

    return (_quad_real(near, 0.0, math.sqrt(w), st)
            + _quad_real(far, 0.0, 1.0 / qs, st))


# ======================================================================
# tracked contours
# ======================================================================

def _pick(candidate: complex, ref: complex) -> complex:
    """Choose +/- candidate continuing ref (same half plane)."""
    if (candidate.real * ref.real + candidate.imag * ref.imag) >= 0.0:
        return candidate
    return -candidate


class _Leg:
    """One smooth piece of a contour with tracked branches of B^(1/2), P.

    zf/dzf parametrize z(s) on [0, 1].  Branch values are marched from s=0
    (seeded by the caller) to s=1 on an adaptive checkpoint grid; values(s)
    re-picks the branch nearest the closest checkpoint, which is safe
    because consecutive checkpoints differ by less than ~30 percent.

    A leg anchored at a turning point q_a (sqrt-substituted entry or exit,
    z - q_a = d * u(s)^2 with u = s or 1 - s) tracks the reduced momentum
    r = P / u instead of P itself: on the tracked sheet

        P^2 * (mu - 1 - z^2 - w) = prod_j (z - q_j),

    so r^2 = d * prod_{j != a}(z - q_j) / (mu - 1 - z^2 - w), smooth and
    nonvanishing along the leg.  This keeps the branch continuity check
    meaningful arbitrarily close to the anchor, where the direct P would
    be a structural zero times roundoff.
    """

    __slots__ = ("fr", "zf", "dzf", "s_ck", "w_ck", "p_ck",
                 "anchor_d", "anchor_end", "others")

    def __init__(self, fr: _Frame, zf, dzf, anchor_q=None, anchor_d=None,
                 anchor_end=False):
        self.fr = fr
        self.zf = zf
        self.dzf = dzf
        self.s_ck: list[float] = []
        self.w_ck: list[complex] = []
        self.p_ck: list[complex] = []
        self.anchor_d = anchor_d
        self.anchor_end = anchor_end
        if anchor_q is None:
            self.others = None
        else:
            rest = sorted(fr.q, key=lambda z: abs(z - anchor_q))
            if abs(rest[0] - anchor_q) > 1e-9 * fr.scale:
                raise ArithmeticError(
                    f"leg anchor {anchor_q:.6g} is not a turning point")
            self.others = rest[1:]

    def _u(self, s: float) -> float:
        return (1.0 - s) if self.anchor_end else s

    def _r2(self, z: complex, w: complex) -> complex:
        num = self.anchor_d
        for q in self.others:
            num *= (z - q)
        return num / (self.fr.mu - 1.0 - z * z - w)

    def march(self, w0: complex, p0: complex, s_from: float, s_to: float):
        fr = self.fr
        s, w, p = s_from, w0, p0
        self.s_ck = [s]
        self.w_ck = [w]
        self.p_ck = [p]
        h = 0.02 * (s_to - s_from)
        # a genuine on-path branch point fails the continuity check at any
        # step size, so a deep floor only lets the march resolve legitimate
        # micro-structure (confluent detours) near a leg end
        h_min = 1e-15 * (s_to - s_from)
        while s < s_to:
            h = min(h, s_to - s)
            while True:
                s2 = s + h
                z = self.zf(s2)
                w2 = _pick(cmath.sqrt(fr.B(z)), w)
                if self.others is not None:
                    p2 = _pick(cmath.sqrt(self._r2(z, w2)), p)
                else:
                    p2 = _pick(cmath.sqrt(fr.P2(z, w2)), p)
                ok_w = abs(w2 - w) <= 0.3 * max(abs(w2), abs(w), 1e-14)
                ok_p = abs(p2 - p) <= 0.3 * max(abs(p2), abs(p), 1e-14)
                if ok_w and ok_p:
                    break
                h *= 0.5
                if h < h_min:
                    raise ArithmeticError(
                        "branch tracking stalled (contour too close to a "
                        "branch point)")
            s, w, p = s2, w2, p2
            self.s_ck.append(s)
            self.w_ck.append(w)
            self.p_ck.append(p)
            h *= 1.9
        if self.others is not None:
            return w, self._u(s) * p
        return w, p

    def values(self, s: float) -> tuple[complex, complex]:
        i = bisect_left(self.s_ck, s)
        if i >= len(self.s_ck):
            i = len(self.s_ck) - 1
        elif i > 0 and s - self.s_ck[i - 1] < self.s_ck[i] - s:
            i = i - 1
        z = self.zf(s)
        w_ref = self.w_ck[i]
        p_ref = self.p_ck[i]
        # near a vanishing-|p| checkpoint the phase reference is taken from
        # the nearest checkpoint with usable magnitude
        if abs(p_ref) < 1e-12:
            j = i
            while j > 0 and abs(self.p_ck[j]) < 1e-12:
                j -= 1
            p_ref = self.p_ck[j]
        w = _pick(cmath.sqrt(self.fr.B(z)), w_ref)
        if self.others is not None:
            return w, self._u(s) * _pick(cmath.sqrt(self._r2(z, w)), p_ref)
        p = _pick(cmath.sqrt(self.fr.P2(z, w)), p_ref)
        return w, p

    def time_integral(self, st: Settings) -> complex:
        def f(s):
            w, p = self.values(s)
            return self.dzf(s) / (p * w)

        val, err = quad(f, 0.0, 1.0, epsabs=st.quad_abs, epsrel=st.quad_rel,
                        limit=st.quad_limit, complex_func=True)
        if abs(err) > 1e-6 * max(1.0, abs(val)):
            raise ArithmeticError(
                f"leg time integral failed to converge (err {abs(err):.3e})")
        return val

    def action_integral(self, st: Settings) -> complex:
        """int P dz along the leg on the tracked sheet.

        Since dP/dg = 1 / (P B^(1/2)) pointwise, the g-derivative of this
        action is the leg's time integral; summed over a contour that
        relation turns integrals of traversal times over g into endpoint
        differences.
        """
        def f(s):
            w, p = self.values(s)
            return p * self.dzf(s)

        val, err = quad(f, 0.0, 1.0, epsabs=st.quad_abs, epsrel=st.quad_rel,
                        limit=st.quad_limit, complex_func=True)
        if abs(err) > 1e-6 * max(1.0, abs(val)):
            raise ArithmeticError(
                f"leg action integral failed to converge (err {abs(err):.3e})")
        return val


def _line_leg(fr, z0, z1):
    dz = z1 - z0
    return _Leg(fr, lambda s: z0 + s * dz, lambda s: dz)


def _stand_leg(fr, z_far: float, x_sing: float, off: float, toward: bool):
    """Straight axis leg between z_far and x_sing + off, clustered at the
    singular end.

    The near end stands a detour radius |off| away from a zero of B or of P
    at x_sing, where the time integrand grows like the inverse square root
    of the remaining distance.  Parametrizing so that sqrt(|z - x_sing|) is
    linear in s cancels that growth exactly, however small the standoff is
    relative to the span; a plain straight leg would leave the quadrature a
    microscopic boundary layer that the extrapolating routine can get
    silently wrong near a confluent pinch (order-one shifts in traversal
    times).  toward runs z_far -> near end, otherwise near end -> z_far.
    """
    sgn = 1.0 if z_far > x_sing else -1.0
    sa = math.sqrt(abs(z_far - x_sing))
    sb = math.sqrt(abs(off))
    u0, u1 = (sa, sb) if toward else (sb, sa)
    du = u1 - u0

    def zf(s):
        u = u0 + s * du
        return complex(x_sing + sgn * u * u)

    def dzf(s):
        return complex(2.0 * sgn * (u0 + s * du) * du)

    return _Leg(fr, zf, dzf)


def _connector_legs(fr, a: float, q_a, b: float, q_b) -> list:
    """Straight path a -> b along the axis with sqrt clustering toward the
    singular stop behind a (q_a) and/or beyond b (q_b), where given."""
    if q_a is None and q_b is None:
        return [("mid", _line_leg(fr, complex(a), complex(b)))]
    if q_a is None:
        return [("mid", _stand_leg(fr, a, q_b, b - q_b, toward=True))]
    if q_b is None:
        return [("mid", _stand_leg(fr, b, q_a, a - q_a, toward=False))]
    m = 0.5 * (a + b)
    return [("mid", _stand_leg(fr, m, q_a, a - q_a, toward=False)),
            ("mid", _stand_leg(fr, m, q_b, b - q_b, toward=True))]


def _sqrt_start_leg(fr, q, z1):
    d = z1 - q
    return _Leg(fr, lambda s: q + d * s * s, lambda s: 2.0 * s * d,
                anchor_q=q, anchor_d=d, anchor_end=False)


def _sqrt_end_leg(fr, z0, q):
    d = z0 - q
    return _Leg(fr, lambda s: q + d * (1.0 - s) ** 2,
                lambda s: -2.0 * (1.0 - s) * d,
                anchor_q=q, anchor_d=d, anchor_end=True)


def _arc_leg(fr, center, radius, th0, th1):
    dth = th1 - th0
    return _Leg(fr,
                lambda s: center + radius * cmath.exp(1j * (th0 + s * dth)),
                lambda s: radius * 1j * dth * cmath.exp(1j * (th0 + s * dth)))


def _tail_leg(fr, q_far):
    """Leg covering (-inf, q_far] via Q = 1/u; s in (0, 1], z(1) = q_far."""
    u1 = 1.0 / q_far

    def zf(s):
        return 1.0 / (u1 * s)

    def dzf(s):
        return -1.0 / (u1 * s * s)

    return _Leg(fr, zf, dzf)


_SEED_S = 1e-6      # relative offset used to seed branches on singular legs
_END_S = 1e-7       # march stop distance from a singular endpoint


def _run_contour(fr: _Frame, legs: list[tuple[str, _Leg]], st: Settings,
                 p_seed_rule: str, want_action: bool = False):
    """March the branch through consecutive legs and sum the time integrals.

    The first leg must be 'start' (anchored at a turning point, B > 0 there)
    or 'tail' (anchored at Q -> -infinity).  p_seed_rule fixes the momentum
    branch at the anchor: 'im-pos' or 'im-neg'.

    With want_action the per-leg actions int P dz are summed as well and
    (time, action) is returned; tail legs are excluded from the action sum
    because their action needs the regularized treatment in
    _tail_action_reg.
    """
    total = 0.0 + 0.0j
    action = 0.0 + 0.0j
    w = p = None
    for i, (kind, leg) in enumerate(legs):
        if i == 0:
            if kind == "start":
                s0 = _SEED_S
                z = leg.zf(s0)
                w0 = cmath.sqrt(fr.B(z))
                if w0.real < 0.0 or (w0.real == 0.0 and w0.imag < 0.0):
                    w0 = -w0          # B > 0 at a real turning point
                if leg.others is not None:
                    # anchored legs track the reduced momentum r = P / u,
                    # which carries the same sign classes since u > 0
                    p0 = cmath.sqrt(leg._r2(z, w0))
                else:
                    p0 = cmath.sqrt(fr.P2(z, w0))
            elif kind == "tail":
                s0 = 1e-10
                z = leg.zf(s0)
                w0 = _pick(cmath.sqrt(fr.B(z)), complex(-2.0 * z.real if z.real < 0 else 2.0 * z.real, 0.0))
                # B^(1/2) ~ +2|Q| > 0 deep in the left tail
                w0 = w0 if w0.real > 0 else -w0
                p0 = cmath.sqrt(fr.P2(z, w0))
            else:
                raise ValueError("contour must open with a start or tail leg")
            if p_seed_rule == "im-pos":
                p0 = p0 if p0.imag >= 0.0 else -p0
            else:
                p0 = p0 if p0.imag <= 0.0 else -p0
            s_stop = 1.0 - (_END_S if kind == "end" else 0.0)
            w, p = leg.march(w0, p0, s0, 1.0)
        else:
            s_stop = 1.0 - (_END_S if kind == "end" else 0.0)
            w, p = leg.march(w, p, 0.0, s_stop)
        total += leg.time_integral(st)
        if want_action and kind != "tail":
            action += leg.action_integral(st)
    if want_action:
        return total, action
    return total


def _axis_stops(fr: _Frame, x_lo: float, x_hi: float,
                with_p_stops: bool) -> list[tuple[float, str]]:
    """Ordered (position, arc-side) stops on the open interval (x_lo, x_hi).

    B branch points: below at Q_+, above at Q_- (pinch deformation).  Real
    turning points crossed by the incoming tail trajectory: below at q1,
    above at q2 (keeps the intrawell stretch forward in real time).
    """
    stops = []
    if fr.qpm_real:
        for x, side in ((fr.q_minus.real, "above"), (fr.q_plus.real, "below")):
            if x_lo < x < x_hi:
                stops.append((x, side))
    if with_p_stops and fr.kind == "four-real":
        q1, q2 = fr.q[0].real, fr.q[1].real
        for x, side in ((q1, "below"), (q2, "above")):
            if x_lo < x < x_hi:
                stops.append((x, side))
    stops.sort(key=lambda t: t[0])
    return stops


def _axis_path(fr: _Frame, x_from: float, x_to: float,
               stops: list[tuple[float, str]]) -> list[tuple[str, _Leg]]:
    """Straight legs along the real axis with semicircular detours.

    Direction is x_from -> x_to (either way); stops must lie strictly
    between.  Returns (kind, leg) pairs with kind 'mid'.
    """
    rightward = x_to > x_from
    ordered = sorted(stops, key=lambda t: t[0], reverse=not rightward)
    pts = [x_from] + [x for x, _ in ordered] + [x_to]
    gaps = [abs(pts[i + 1] - pts[i]) for i in range(len(pts) - 1)]
    legs = []
    cur = x_from
    prev_stop = None
    for i, (x, side) in enumerate(ordered):
        r = 0.25 * min(gaps[i], gaps[i + 1])
        # refuse only a detour too small to resolve in double precision;
        # the critical-degeneracy cutoff on g itself is enforced upstream,
        # and micro-detours between a turning point and a nearby zero of B
        # (confluent for mu >= 1) are legitimate and carry O(1) time
        if r < 64.0 * sys.float_info.epsilon * max(1.0, abs(x)):
            raise CriticalPoint(
                f"contour detour radius collapsed near Q = {x:.6g}")
        entry = x - r if rightward else x + r
        exit_ = x + r if rightward else x - r
        legs.extend(_connector_legs(fr, cur, prev_stop, entry, x))
        if rightward:
            th0, th1 = (math.pi, 2.0 * math.pi) if side == "below" \
                else (math.pi, 0.0)
        else:
            th0, th1 = (0.0, -math.pi) if side == "below" else (0.0, math.pi)
        legs.append(("mid", _arc_leg(fr, complex(x), r, th0, th1)))
        cur = exit_
        prev_stop = x
    legs.extend(_connector_legs(fr, cur, prev_stop, x_to, None))
    return legs


def _check_end_sheet(fr: _Frame, leg: _Leg, q_end: complex):
    """Canary: the tracked sheet must actually vanish at the end point."""
    w, p = leg.values(1.0 - 1e-5)
    z = leg.zf(1.0 - 1e-5)
    if abs(p) ** 2 > 1e-2 * fr.scale ** 2 and abs(fr.P2(q_end, _pick(
            cmath.sqrt(fr.B(q_end)), w))) > 1e-3 * fr.scale ** 2:
        raise ArithmeticError(
            "contour arrived on the wrong momentum sheet at a turning point")


def _tau2_half(fr: _Frame, st: Settings, with_action: bool = False):
    """Traversal time q3 -> opposite turning point (half the complex period).

    With with_action, returns (time, action) where action = int P dz along
    the same contour.
    """
    q3 = fr.q[2].real if fr.kind == "four-real" else \
        sorted(z.real for z in fr.q if z.imag == 0.0)[0]

    if fr.kind == "four-real":
        q2 = fr.q[1].real
        stops = _axis_stops(fr, q2, q3, with_p_stops=False)
        if stops:
            path = _axis_path(fr, q3, q2, stops)
            # replace flat entry/exit legs by sqrt-substituted ones
            z_fin = path[0][1].zf(1.0)
            legs = [("start", _sqrt_start_leg(fr, q3, z_fin))] + path[1:-1]
            z_lst = path[-1][1].zf(0.0)
            legs.append(("end", _sqrt_end_leg(fr, z_lst, q2)))
        else:
            qc = -0.5 * fr.alpha
            mid = qc if q2 < qc < q3 else 0.5 * (q2 + q3)
            legs = [("start", _sqrt_start_leg(fr, q3, mid)),
                    ("end", _sqrt_end_leg(fr, mid, q2))]
        res = _run_contour(fr, legs, st, p_seed_rule="im-pos",
                           want_action=with_action)
        _check_end_sheet(fr, legs[-1][1], complex(q2))
        return res

    if fr.kind == "right-pair":
        q1 = next(z for z in fr.q if z.imag > 0.0)
        x1 = q1.real
        if not x1 < q3 - 1e-12:
            raise ArithmeticError("complex turning point not left of the well")
        stops = _axis_stops(fr, x1, q3, with_p_stops=False)
        path = _axis_path(fr, q3, x1, stops)
        z_fin = path[0][1].zf(1.0)
        legs = [("start", _sqrt_start_leg(fr, q3, z_fin))] + path[1:]
        legs.append(("end", _sqrt_end_leg(fr, complex(x1), q1)))
        res = _run_contour(fr, legs, st, p_seed_rule="im-pos",
                           want_action=with_action)
        _check_end_sheet(fr, legs[-1][1], q1)
        return res

    raise OutsideWellRange(
        f"no interwell traversal defined at g = {fr.g:.6g} ({fr.kind})")


def _tau_ss_raw(fr: _Frame, st: Settings, with_action: bool = False):
    """Traversal time from Q -> -infinity to q3 (second pole position).

    With with_action, also returns the action int P dz along the contour,
    with the divergent left tail regularized by _tail_action_reg.
    """
    q3 = fr.q[2].real if fr.kind == "four-real" else \
        sorted(z.real for z in fr.q if z.imag == 0.0)[0]
    left_anchor = q3
    stops = _axis_stops(fr, -math.inf, q3, with_p_stops=True)
    if stops:
        left_anchor = min(x for x, _ in stops)
    q_far = left_anchor - max(2.0, fr.scale)
    inner = _axis_stops(fr, q_far, q3, with_p_stops=True)
    path = _axis_path(fr, q_far, q3, inner)
    legs = [("tail", _tail_leg(fr, q_far))] + path[:-1]
    z_lst = path[-1][1].zf(0.0)
    legs.append(("end", _sqrt_end_leg(fr, z_lst, complex(q3))))
    res = _run_contour(fr, legs, st, p_seed_rule="im-neg",
                       want_action=with_action)
    _check_end_sheet(fr, legs[-1][1], complex(q3))
    if with_action:
        t, act = res
        return t, act + _tail_action_reg(fr, legs[0][1], st)
    return res


def _tail_action_reg(fr: _Frame, leg: _Leg, st: Settings) -> complex:
    """Regularized action along the marched left tail leg.

    The tracked momentum behaves as p ~ sgn * i * (-z - 1 - beta / z) with
    beta = (alpha - mu) / 2 as z -> -infinity; subtracting that asymptote
    makes int p dz converge, and the asymptote's antiderivative is kept
    only at the finite end since its divergent part does not depend on g.
    The difference p - p_asym is evaluated through the exact identity

        p^2 - p_asym^2 = (w + 2z + alpha) + (alpha - mu) / z + beta^2 / z^2,
        w + 2z + alpha = 4 (g - g_c) / (w - 2z - alpha),

    which keeps full relative precision at arbitrarily large |z| where the
    direct subtraction would cancel completely.
    """
    beta = 0.5 * (fr.alpha - fr.mu)
    four_dg = 4.0 * (fr.g - fr.g_c)
    _, p_probe = leg.values(1e-9)
    sgn = 1.0 if p_probe.imag >= 0.0 else -1.0

    def f(s):
        z = leg.zf(s)
        w, p = leg.values(s)
        p_asym = sgn * 1j * (-z - 1.0 - beta / z)
        num = (four_dg / (w - 2.0 * z - fr.alpha)
               + (fr.alpha - fr.mu) / z + beta * beta / (z * z))
        return (num / (p + p_asym)) * leg.dzf(s)

    val, _err = quad(f, 0.0, 1.0, epsabs=st.quad_abs, epsrel=st.quad_rel,
                     limit=st.quad_limit, complex_func=True)
    z_end = complex(leg.zf(1.0))
    prim = sgn * 1j * (-0.5 * z_end * z_end - z_end
                       - beta * cmath.log(-z_end))
    return val + prim


def _right_action_reg(fr: _Frame, q4: float, st: Settings) -> float:
    """Im part of the regularized action along the right real tail.

    Normalized so that its g-derivative equals the pole offset a
    (_tail_time_right) exactly: the value is -int_{q4}^{inf} |P| dQ with
    the g-independent divergent antiderivative of |P| ~ z - 1 - beta / z
    (beta = (mu + alpha) / 2) removed; the split point q4 + W drops out of
    the assembled value.  The far difference |P| - (z - 1 - beta / z) uses
    the same conjugate-form identity as _tail_action_reg.
    """
    i4 = _root_index(fr, q4)
    beta = 0.5 * (fr.mu + fr.alpha)
    four_dg = 4.0 * (fr.g - fr.g_c)
    w = max(1.0, fr.scale)
    zb = q4 + w

    def p_abs(x):
        p2 = _p2_plus_stable(fr, x)
        return math.sqrt(-p2) if p2 < 0.0 else 0.0

    def near(s):
        x = q4 + s * s
        return 2.0 * s * s * math.sqrt(_cofactor(fr, x, i4))

    def far(u):
        x = 1.0 / u
        sb = _sqrtB_pos(fr, x)
        num = (-four_dg / (sb + 2.0 * x + fr.alpha)
               - (fr.mu + fr.alpha) / x - beta * beta / (x * x))
        diff = num / (p_abs(x) + x - 1.0 - beta / x)
        return diff / (u * u)

    near_val = _quad_real(near, 0.0, math.sqrt(w), st)
    far_val = _quad_real(far, 0.0, 1.0 / zb, st)
    prim = 0.5 * zb * zb - zb - beta * math.log(zb)
    return -(near_val + far_val) + prim


# ======================================================================
# assembled per-(params, g) quantities with caching
# ======================================================================

def _fold_re(x: float, tau1: float) -> float:
    """Fold a real time part into [0, tau1), snapping to the exact lattice
    classes 0 and tau1/2 to absorb quadrature roundoff."""
    r = x % tau1
    for target in (0.0, 0.5 * tau1, tau1):
        if abs(r - target) < 1e-6 * tau1:
            return target % tau1
    return r


def _require_orbit_g(fr: _Frame):
    geo = fr.geo
    g_floor = min(geo.g_min.values())
    if fr.g <= g_floor:
        raise OutsideWellRange(
            f"g = {fr.g:.6g} at or below the deep-well minimum {g_floor:.6g}")
    if geo.double_well and geo.g_s is not None and fr.g >= geo.g_s:
        raise OutsideWellRange(
            f"g = {fr.g:.6g} at or above the saddle value {geo.g_s:.6g}")
    # For mu > 1 a real turning point inside the circle Q^2 = mu - 1 is a
    # zero of the minus momentum sheet: the level curve then turns around
    # at a real branch point of B^(1/2) with P != 0 and the intrawell orbit
    # leaves the principal sheet.  All interwell machinery here assumes the
    # principal-sheet topology (B^(1/2) > 0 along real orbits), so such
    # parameter points are rejected as out of domain.
    if fr.mu > 1.0:
        for z in fr.q:
            if z.imag == 0.0 and fr.mu - 1.0 - z.real ** 2 > -1e-12:
                raise OutsideWellRange(
                    f"turning point Q = {z.real:.6g} lies inside the circle "
                    f"Q^2 = mu - 1 at g = {fr.g:.6g}: the orbit leaves the "
                    "principal momentum sheet (outside the double-well "
                    "analysis domain)")


def _require_noncritical(fr: _Frame, st: Settings):
    if abs(fr.g - fr.g_c) < st.critical_cutoff:
        raise CriticalPoint(
            f"|g - g_c| = {abs(fr.g - fr.g_c):.2e} below cutoff "
            f"{st.critical_cutoff:.0e}")


def _frame_cached(params_c: ModelParams, g: float, st: Settings) -> _Frame:
    key = ("frame", params_c.mu, params_c.alpha_d, g, _st_key(st))
    return _cached(key, lambda: _build_frame(params_c, g, st))


def _well_data_cached(params_c: ModelParams, g: float, sigma_c: int,
                      st: Settings) -> tuple[float, float]:
    def build():
        fr = _frame_cached(params_c, g, st)
        _require_orbit_g(fr)
        a, b = _well_interval(fr, sigma_c)
        return _action_tau1(fr, a, b, st)

    key = ("well", params_c.mu, params_c.alpha_d, g, sigma_c, _st_key(st))
    return _cached(key, build)


def _interwell_cached(params_c: ModelParams, g: float, st: Settings):
    """(tau1, tau2, tau_star, tau_star_star) in the canonical frame."""

    def build():
        fr = _frame_cached(params_c, g, st)
        _require_orbit_g(fr)
        _require_noncritical(fr, st)
        sigma_deep = +1
        _, tau1 = _well_data_cached(params_c, g, sigma_deep, st)

        t_half = _tau2_half(fr, st)
        tau2 = 2.0 * t_half
        if tau2.imag < 0.0:
            tau2 = -tau2
        x_im = 0.5 * tau2.imag
        tau2 = complex(_fold_re(tau2.real, tau1), tau2.imag)

        q4 = max(z.real for z in fr.q if z.imag == 0.0)
        a_im = _tail_time_right(fr, q4, st)
        tau_star = complex(0.5 * tau1, a_im)

        t_ss = _tau_ss_raw(fr, st)
        if t_ss.imag < 0.0:
            t_ss = -t_ss
        y = t_ss.imag % (2.0 * x_im)
        if y < x_im:
            y = 2.0 * x_im - y
        tau_ss = complex(_fold_re(t_ss.real, tau1), y)

        # pole ordering inside the fundamental strip
        if not (a_im < x_im and tau_ss.imag < tau2.imag + 1e-9):
            raise ArithmeticError(
                "pole ordering violated: "
                f"a={a_im:.6g}, Im tau2/2={x_im:.6g}, Im tau**={tau_ss.imag:.6g}")
        return tau1, tau2, tau_star, tau_ss

    key = ("inter", params_c.mu, params_c.alpha_d, g, _st_key(st))
    return _cached(key, build)


def _interwell_actions(params_c: ModelParams, g: float, st: Settings):
    """Raw interwell traversal data plus regularized actions at one g.

    Returns (tau1, t_half, t_ss, a_im, act_half, act_ss, a_star_im): the
    unfolded half-period traversal t_half and incoming traversal t_ss
    (no sign or lattice normalization applied), the right-tail time a_im,
    and the action integrals int P dz along the same three contours (the
    two tails regularized with g-independent counterterms).  Because
    dP/dg = 1 / (P B^(1/2)) pointwise, the g-derivative of each action is
    the matching traversal time, so an integral of R'(g) over a band
    where the marching contour degenerates (turning point confluent with
    a zero of B, possible for mu >= 1) reduces to differences of these
    actions evaluated at the band edges, where the contours still work.
    """

    def build():
        fr = _frame_cached(params_c, g, st)
        _require_orbit_g(fr)
        _require_noncritical(fr, st)
        _, tau1 = _well_data_cached(params_c, g, +1, st)
        t_half, act_half = _tau2_half(fr, st, with_action=True)
        t_ss, act_ss = _tau_ss_raw(fr, st, with_action=True)
        q4 = max(z.real for z in fr.q if z.imag == 0.0)
        a_im = _tail_time_right(fr, q4, st)
        a_star_im = _right_action_reg(fr, q4, st)
        return tau1, t_half, t_ss, a_im, act_half, act_ss, a_star_im

    key = ("actions", params_c.mu, params_c.alpha_d, g, _st_key(st))
    return _cached(key, build)


# ======================================================================
# public operations
# ======================================================================

def turning_points(params: ModelParams, g: float,
                   settings: Settings = DEFAULT) -> TurningPoints:
    """Roots of the turning-point quartic and branch points of B at fixed g.

    Valid for any g; complex roots are permitted and ordered by real part
    (Im > 0 first on ties).  q_plus + q_minus = -alpha_d exactly.
    """
    fr = _build_frame(params, g, settings) if params.alpha_d >= 0 else None
    if fr is None:
        # the quartic itself is frame-agnostic; build directly in user frame
        mu, alpha = params.mu, params.alpha_d
        roots = _quartic_roots(mu, alpha, g, settings)
        q, n_real = _classify_roots(roots, settings)
        g_c, _ = critical_quasienergy(params)
        qp, qm, _disc = _b_branch_points(mu, alpha, g)
        state = "degenerate" if abs(g - g_c) <= settings.critical_cutoff \
            else ("real" if g < g_c else "complex")
        return TurningPoints(g=g, q=tuple(q), q_plus=qp, q_minus=qm,
                             n_real=n_real, branch_state=state)
    # enforce exact root-sum identity for the branch points
    qp, qm = fr.q_plus, fr.q_minus
    return TurningPoints(g=g, q=tuple(fr.q), q_plus=qp, q_minus=qm,
                         n_real=fr.n_real, branch_state=_branch_state(fr, settings))


def _b_half_cut(params: ModelParams, g: float, Q: complex) -> complex:
    """B^(1/2) with the cut on the straight segment joining Q_- to Q_+,
    normalized to +2Q far to the right on the real axis."""
    mu, alpha = params.mu, params.alpha_d
    qp, qm, _disc = _b_branch_points(mu, alpha, g)
    m = 0.5 * (qp + qm)
    d = 0.5 * (qp - qm)
    if d == 0:
        return 2.0 * (Q - m)
    w = (Q - m) / d
    return 2.0 * d * cmath.sqrt(w - 1.0) * cmath.sqrt(w + 1.0)


def momentum_branch(params: ModelParams, g: float, Q: complex,
                    branch: str = "plus",
                    settings: Settings = DEFAULT) -> complex:
    """Pointwise momentum P(Q | g) on the requested branch.

    Sign conventions on the real axis (these are fixed conventions, not a
    single analytic continuation): inside either well the plus branch is
    real positive; on the outer forbidden tails it is -i |P|; on the
    interwell forbidden stretch it is +i |P|.  Between real branch points
    Q_-/+ (g < g_c), and everywhere off the real axis, B^(1/2) is evaluated
    on the sheet cut along the segment joining Q_- to Q_+ (values on the
    cut take the upper-side limit) and P is the principal square root.
    The minus branch flips the sign of B^(1/2).
    """
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    mu, alpha = params.mu, params.alpha_d
    Qc = complex(Q)
    tp = turning_points(params, g, settings)

    real_axis = abs(Qc.imag) <= 1e-13 * max(1.0, abs(Qc.real))
    if real_axis:
        x = Qc.real
        b = 4.0 * x * x + 4.0 * alpha * x + (1.0 - mu) ** 2 + 4.0 * g
        if b >= 0.0:
            w = math.sqrt(b)
            if branch == "minus":
                w = -w
            p2 = mu - 1.0 - x * x + w
            if p2 >= 0.0:
                return complex(math.sqrt(p2), 0.0)
            # forbidden: sign by region
            reals = sorted(z.real for z in tp.q if z.imag == 0.0)
            im_abs = math.sqrt(-p2)
            if reals and (x < reals[0] or x > reals[-1]):
                return complex(0.0, -im_abs)
            return complex(0.0, +im_abs)
        # between real branch points: upper-side limit of the segment cut
        w = complex(0.0, math.sqrt(-b))
        if branch == "minus":
            w = -w
        return cmath.sqrt(mu - 1.0 - x * x + w)

    w = _b_half_cut(params, g, Qc)
    if branch == "minus":
        w = -w
    return cmath.sqrt(mu - 1.0 - Qc * Qc + w)


def action_and_period(params: ModelParams, g: float, well,
                      settings: Settings = DEFAULT, *,
                      check_domega: bool = False,
                      allow_complex_orbit: bool = False
                      ) -> tuple[float, float, float]:
    """Intrawell action I(g), period tau1, and frequency omega = 2 pi / tau1.

    I(g) = (1/pi) integral of P dQ across the well.  dI/dg = 1/omega; with
    check_domega=True this is verified by central finite difference.  When
    the requested well has no real orbit at this g (quasienergy below the
    shallow-well bottom) the complex-orbit analog is available behind
    allow_complex_orbit: its period equals the deep-well period and its
    action differs from the deep-well action by the bias alpha_d.
    """
    params_c, flipped = _canonical(params)
    sigma_u = _as_well_sigma(params, well)
    sigma_c = -sigma_u if flipped else sigma_u

    fr = _frame_cached(params_c, g, settings)
    _require_orbit_g(fr)
    has_real_orbit = fr.kind == "four-real" or (
        fr.kind == "right-pair" and sigma_c > 0)

    if has_real_orbit:
        quad_sigma = sigma_c
        action, tau1 = _well_data_cached(params_c, g, sigma_c, settings)
    elif sigma_c < 0 and fr.kind == "right-pair" and allow_complex_orbit:
        # the shallow orbit continues to a complex one below its well bottom;
        # its period matches the deep orbit and its action is offset by the
        # residue sum, which equals the bias
        quad_sigma = +1
        act_deep, tau1 = _well_data_cached(params_c, g, +1, settings)
        action = act_deep - params_c.alpha_d
    elif sigma_c < 0 and fr.kind == "right-pair":
        raise OutsideWellRange(
            f"g = {g:.6g} below the shallow-well bottom; pass "
            "allow_complex_orbit=True for the complex-orbit analog")
    else:
        raise OutsideWellRange(
            f"no orbit for sigma={sigma_u} at g = {g:.6g}")

    omega = 2.0 * math.pi / tau1

    if check_domega:
        span = (fr.geo.g_s if fr.geo.g_s is not None else g + 1.0) \
            - min(fr.geo.g_min.values())
        h = 1e-6 * span
        ip, _ = _well_data_cached(params_c, g + h, quad_sigma, settings)
        im, _ = _well_data_cached(params_c, g - h, quad_sigma, settings)
        didg = (ip - im) / (2.0 * h)
        if abs(didg * omega - 1.0) > 1e-4:
            raise ArithmeticError(
                f"omega * dI/dg = {didg * omega:.8f} deviates from 1")

    return action, tau1, omega


def complex_period(params: ModelParams, g: float,
                   settings: Settings = DEFAULT) -> complex:
    """Complex period tau2 of the orbit at quasienergy g.

    Im tau2 > 0; Re tau2 is reported in [0, tau1).  Re tau2 is 0 when the
    branch points Q_+/- are complex (g > g_c) and tau1/2 when they are real
    or when only the complex-orbit analog of the shallow well exists.
    Raises CriticalPoint within the configured cutoff of g_c.
    """
    params_c, _ = _canonical(params)
    _, tau2, _, _ = _interwell_cached(params_c, g, settings)
    return tau2


def pole_positions(params: ModelParams, g: float,
                   settings: Settings = DEFAULT) -> tuple[complex, complex]:
    """Positions (tau_star, tau_star_star) of the trajectory poles nearest
    the real time axis, inside the fundamental parallelogram anchored at
    Q(0) = q3, P(0) = 0 (deep-well inner turning point).

    Re tau_star = tau1/2 exactly; Im tau_star is the regularized travel
    time from q4 to infinity.  tau_star_star lies on the incoming traversal
    from Q -> -infinity; Im tau_star < Im tau2 / 2 < Im tau_star_star.
    """
    params_c, _ = _canonical(params)
    _, _, tau_star, tau_ss = _interwell_cached(params_c, g, settings)
    return tau_star, tau_ss


def orbit_data(params: ModelParams, g: float, well,
               settings: Settings = DEFAULT) -> OrbitData:
    """All orbit quantities for one well at one quasienergy."""
    sigma_u = _as_well_sigma(params, well)
    action, tau1, omega = action_and_period(params, g, sigma_u, settings,
                                            allow_complex_orbit=True)
    tau2 = complex_period(params, g, settings)
    tau_star, tau_ss = pole_positions(params, g, settings)
    params_c, _ = _canonical(params)
    fr = _frame_cached(params_c, g, settings)
    return OrbitData(g=g, sigma=sigma_u, action=action, tau1=tau1,
                     omega=omega, tau2=tau2, tau_star=tau_star,
                     tau_star_star=tau_ss,
                     branch_state=_branch_state(fr, settings))


# ======================================================================
# complex-time integration of the equations of motion
# ======================================================================

def _flow_rhs(mu: float, alpha: float, direction: complex):
    def rhs(s, y):
        Q = complex(y[0], y[1])
        P = complex(y[2], y[3])
        r2 = Q * Q + P * P
        dQ = P * (r2 - mu + 1.0) * direction
        dP = -(Q * (r2 - mu - 1.0) - alpha) * direction
        return [dQ.real, dQ.imag, dP.real, dP.imag]

    return rhs


def _blowup_event(bound: float):
    def event(s, y):
        return bound - (y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3])

    event.terminal = True
    return event


def _integrate_leg(mu, alpha, y0, direction, length, st, t_eval=None,
                   with_action=False):
    if with_action:
        base = _flow_rhs(mu, alpha, direction)

        def rhs(s, y):
            d = base(s, y[:4])
            Q = complex(y[0], y[1])
            P = complex(y[2], y[3])
            dQ = complex(d[0], d[1])
            dS = P * dQ
            return d + [dS.real, dS.imag]
    else:
        rhs = _flow_rhs(mu, alpha, direction)

    ev = _blowup_event(st.pole_bound ** 2)
    sol = solve_ivp(rhs, (0.0, length), y0, method="DOP853",
                    rtol=1e-11, atol=1e-13, dense_output=False,
                    t_eval=t_eval, events=ev, max_step=length / 16.0)
    if sol.status == 1:
        raise PoleProximity(
            "trajectory blow-up: complex-time path passed too close to a pole")
    if not sol.success:
        raise ArithmeticError(f"orbit integration failed: {sol.message}")
    return sol


def _goto_complex_time(fr: _Frame, q3: float, tau: complex, tau1: float,
                       st: Settings) -> list:
    """Flow (q3, 0) to complex time tau along a pole-dodging staircase.

    Trajectory poles sit on columns Re t = 0 and Re t = tau1/2 (mod tau1),
    so the path runs along the real axis to tau1/4, vertically to Im tau,
    then horizontally to Re tau.  Because the continued flow is meromorphic
    in t the endpoint is path independent.
    """
    y = [q3, 0.0, 0.0, 0.0]
    r0 = 0.25 * tau1
    legs = [((1.0 + 0.0j), r0),
            (1j if tau.imag >= 0.0 else -1j, abs(tau.imag)),
            ((1.0 + 0.0j) if tau.real >= r0 else (-1.0 + 0.0j),
             abs(tau.real - r0))]
    for direction, length in legs:
        if length > 0.0:
            sol = _integrate_leg(fr.mu, fr.alpha, y, direction, length, st)
            y = list(sol.y[:, -1])
    return y


def integrate_orbit(params: ModelParams, g: float, tau0: complex = 0.0,
                    n_samples: int = 256,
                    settings: Settings = DEFAULT) -> OrbitSamples:
    """Integrate the complex-time equations of motion over one real period.

    The trajectory starts at the deep-well inner turning point (Q, P) =
    (q3, 0) at t = 0, moves to complex time tau0 (along a staircase path
    that avoids the pole columns), then runs one real period tau1
    collecting n_samples points.  The quasienergy must stay conserved to
    1e-9 relative; violation (always a symptom of passing near a pole)
    raises PoleProximity.
    """
    params_c, flipped = _canonical(params)
    fr = _frame_cached(params_c, g, settings)
    _require_orbit_g(fr)
    _, tau1 = _well_data_cached(params_c, g, +1, settings)

    q3 = fr.q[2].real if fr.kind == "four-real" else \
        sorted(z.real for z in fr.q if z.imag == 0.0)[0]
    tau0 = complex(tau0)
    if tau0 != 0.0:
        y = _goto_complex_time(fr, q3, tau0, tau1, settings)
    else:
        y = [q3, 0.0, 0.0, 0.0]

    offsets = np.linspace(0.0, tau1, n_samples)
    sol = _integrate_leg(fr.mu, fr.alpha, y, 1.0 + 0.0j, tau1, settings,
                         t_eval=offsets)
    Q = sol.y[0] + 1j * sol.y[1]
    P = sol.y[2] + 1j * sol.y[3]
    if flipped:
        Q, P = -Q, -P

    g_vals = eval_g(params, Q, P)
    conservation = float(np.max(np.abs(g_vals - g)) / max(1.0, abs(g)))
    if conservation > 1e-9:
        raise PoleProximity(
            f"quasienergy drift {conservation:.2e} along the sampled period "
            "(complex-time offset too close to a pole)")
    return OrbitSamples(g=g, tau0=tau0, t=tau0 + offsets, Q=Q, P=P,
                        conservation=conservation)


def action_of_imag_time(params: ModelParams, g: float, tau: complex,
                        settings: Settings = DEFAULT) -> float:
    """Action I(g | tau) = (1/2pi) * integral of P dQ over one real period
    starting at complex time offset tau.

    Piecewise constant in tau: equals the deep-well action for small
    Im tau and drops by the pole residues each time Im tau crosses a pole
    line.  Raises PoleProximity when Im tau sits within the configured
    margin of a pole.
    """
    params_c, flipped = _canonical(params)
    fr = _frame_cached(params_c, g, settings)
    _require_orbit_g(fr)
    tau1, tau2, tau_star, tau_ss = _interwell_cached(params_c, g, settings)

    tau = complex(tau)
    x2 = tau2.imag
    pole_ims = [tau_star.imag, x2 - tau_star.imag,
                tau_ss.imag, x2 - tau_ss.imag]
    y = tau.imag % x2 if x2 > 0 else tau.imag
    margin = settings.pole_margin
    for pim in pole_ims:
        for image in (pim, pim - x2, pim + x2):
            if abs(y - image) < margin:
                raise PoleProximity(
                    f"Im tau = {tau.imag:.6g} within {margin:.0e} of a pole "
                    f"line at {image:.6g} (mod Im tau2)")

    q3 = fr.q[2].real if fr.kind == "four-real" else \
        sorted(z.real for z in fr.q if z.imag == 0.0)[0]
    if tau != 0.0:
        y0 = _goto_complex_time(fr, q3, tau, tau1, settings)
    else:
        y0 = [q3, 0.0, 0.0, 0.0]
    y0 = y0 + [0.0, 0.0]
    sol = _integrate_leg(fr.mu, fr.alpha, y0, 1.0 + 0.0j, tau1, settings,
                         with_action=True)
    S = complex(sol.y[4, -1], sol.y[5, -1])
    action = S / (2.0 * math.pi)
    if abs(action.imag) > 1e-6 * max(1.0, abs(action.real)):
        raise ArithmeticError(
            f"action acquired imaginary part {action.imag:.2e}")
    return action.real
