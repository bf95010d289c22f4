"""Quasistationary populations and interwell switching exponents.

The dissipative intrawell dynamics funnels the oscillator toward the well
bottom, with rare fluctuation-driven excursions up the level ladder.  The
stationary population of the ladder falls off exponentially,

    rho_n = C_w exp(-R(g_n) / lam),    R(g) = int_{g_min}^{g} R'(g') dg',

with a slope set entirely by classical complex-time data,

    R'(g) = 2 Im(tau2 - tau* - tau**) > 0,

where tau2 is the complex period of the orbit at quasienergy g and tau*,
tau** are the two trajectory poles nearest the real time axis.  R' is the
same for both wells and even in the drive bias; it diverges
logarithmically at the branch-point collision value g_c (where interwell
traversal times blow up) and stays finite at the well bottoms and at the
saddle.

The integral of R' from a well bottom to the saddle is the activation
energy R_A of that well: the switching rate out of the well is
W_sw = C_sw exp(-R_A / lam), in direct analogy with thermal activation
even though the dynamics here is at zero temperature.  Since R' > 0, the
deeper well always has the larger R_A, and the ratio of stationary well
populations is exp([R_A(+1) - R_A(-1)] / lam).

Near a well bottom R' has a closed form in the harmonic curvatures
(A_P, A_Q) of that well; it diverges when A_P = A_Q, which happens
exactly when g_c collides with the well minimum (bias equal to plus or
minus the detuning).  At that point upward transitions out of the ground
state switch off and the intrawell distribution is no longer set by the
rate ladder; the affected operations refuse with LocalizationPoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np
from scipy.integrate import quad

from .config import DEFAULT, Settings
from .errors import (
    CriticalPoint,
    LocalizationPoint,
    NullSpaceDegenerate,
    OutsideWellRange,
)
from .landscape import (
    ModelParams,
    WellId,
    _as_well_sigma,
    critical_quasienergy,
    deep_well,
    shallow_well,
    stationary_points,
    well_curvatures,
)
from .orbits import (
    _canonical,
    _cofactor,
    _frame_cached,
    _interwell_actions,
    _quad_real,
    _require_orbit_g,
    _root_index,
    _well_interval,
    complex_period,
    pole_positions,
)
from .semiclassics import LevelLadder, RateTable

__all__ = [
    "DistributionProfile",
    "ActivationResult",
    "r_prime",
    "r_prime_at_minimum",
    "activation_energy",
    "delta_activation",
    "quasistationary_distribution",
    "log_susceptibility",
    "prebifurcation_activation",
    "area_formula_rprime",
    "resonance_offsets",
    "switching_rate_estimate",
]


# relative (to the quasienergy span) offset pulled in from the well bottom
# and the saddle when integrating R': the integrand is finite there, so the
# clipped slivers contribute O(eps * span * R') ~ 1e-10, far below the
# quadrature tolerance, while keeping the root-finding frames comfortably
# non-degenerate.
_EDGE_EPS = 1e-10

# populations below this fraction of the largest one carry no resolvable
# information in the balance-operator null vector (double precision), so
# slope comparisons skip them.
_RESOLVE_FLOOR = 1e-8


# ======================================================================
# data types
# ======================================================================

@dataclass(frozen=True)
class DistributionProfile:
    """Quasistationary intrawell populations over one level ladder.

    samples pairs each ladder quasienergy g_n with R'(g_n); R holds the
    cumulative integral R(g_n) from the well bottom (so R(g_min) = 0 is
    the anchor, not a stored entry).  rho is the population route through
    the exponential of -R/lam, rho_balance the independent route through
    the null vector of the intrawell balance operator; both are normalized
    to unit total.  slope_discrepancy is the largest relative deviation
    between the log-slope of rho_balance and -R'/lam over resolvable
    neighbor pairs.  normalization is C_w in rho_n = C_w exp(-R_n/lam).
    """

    well: WellId
    samples: tuple[tuple[float, float], ...]
    R: tuple[float, ...]
    rho: tuple[float, ...]
    rho_balance: tuple[float, ...]
    slope_discrepancy: float
    normalization: float


@dataclass(frozen=True)
class ActivationResult:
    """Activation energies and the switching-rate estimate they imply.

    r_a maps sigma to the activation energy of that well; switching_exponent
    is r_a/lam and w_sw = prefactor * exp(-switching_exponent).  The
    prefactor is kappa, an order-of-magnitude placeholder only: the theory
    pins the exponent, not the prefactor.  population_ratio_exponent is
    (R_A(+1) - R_A(-1))/lam, the log of the stationary well-population
    ratio; delta_r_a = R_A(deep) - R_A(shallow) >= 0.
    """

    r_a: Mapping[int, float]
    delta_r_a: float
    population_ratio_exponent: float
    switching_exponent: Mapping[int, float]
    prefactor_estimate: float
    w_sw: Mapping[int, float]


# ======================================================================
# slope of the switching exponent
# ======================================================================

def r_prime(params: ModelParams, g: float,
            settings: Settings = DEFAULT) -> float:
    """Slope R'(g) of the switching exponent at quasienergy g.

    Computed as 2 Im(tau2 - tau* - tau**) from the complex period and the
    two pole positions; identical for both wells and even in alpha_d.
    Positive on every orbit-supporting g; diverges logarithmically at g_c
    (CriticalPoint inside the configured cutoff) and stays finite at the
    well bottoms, where Im tau2 and Im tau* diverge at the same rate.
    """
    tau_star, tau_ss = pole_positions(params, g, settings)
    tau2 = complex_period(params, g, settings)
    val = 2.0 * (tau2 - tau_star - tau_ss).imag
    if not val > 0.0:
        raise ArithmeticError(
            f"R'(g) = {val:.6g} not positive at g = {g:.6g}: pole "
            "positions inconsistent with the period")
    return val


def r_prime_at_minimum(params: ModelParams, well,
                       settings: Settings = DEFAULT) -> float:
    """Closed-form R' at the bottom of one well.

    In the harmonic neighborhood of a minimum with curvatures (A_P, A_Q),

        R'(g_min) = 2 (A_P A_Q)^(-1/2)
                    * log[(sqrt(A_P) + sqrt(A_Q)) / |sqrt(A_P) - sqrt(A_Q)|].

    The value diverges when A_P = A_Q, which happens exactly when g_c
    touches this well's bottom (alpha_d = -sigma * mu): LocalizationPoint
    is raised there, since the expansion (and the rate ladder built on it)
    loses meaning.  For a small curvature mismatch the value grows like
    log(4 / |mu + sigma alpha_d|).
    """
    a_p, a_q = well_curvatures(params, well)
    if a_p <= 0.0 or a_q <= 0.0:
        raise OutsideWellRange(
            f"curvatures A_P = {a_p:.6g}, A_Q = {a_q:.6g} not both positive")
    if abs(a_p - a_q) <= settings.localization_tol * max(a_p, a_q):
        sigma = _as_well_sigma(params, well)
        raise LocalizationPoint(
            f"A_P = A_Q = {a_p:.6g} for sigma = {sigma:+d} "
            "(bias equals minus sigma times the detuning): g_c touches the "
            "well bottom and the bottom slope diverges")
    rp, rq = math.sqrt(a_p), math.sqrt(a_q)
    return 2.0 / (rp * rq) * math.log((rp + rq) / abs(rp - rq))


# ----------------------------------------------------------------------
# integrals of R' with the g_c singularity flattened
# ----------------------------------------------------------------------

def _piece_integral(params: ModelParams, g_c: float, side: float,
                    d_near: float, d_far: float, st: Settings) -> float:
    """Integral of R' over g = g_c + side * d, d in [d_near, d_far].

    Substituting d = exp(-u) turns the logarithmic divergence of R' at
    d -> 0 into an exponentially damped smooth integrand, so ordinary
    adaptive quadrature converges at full order.  d_near is clamped to
    stay outside the CriticalPoint cutoff; the neglected sliver carries
    O(R'(d0) * d0) ~ 1e-7 * cutoff-scale mass, far below tolerance.
    """
    d0 = max(d_near, 10.0 * st.critical_cutoff)
    if d0 >= d_far:
        return 0.0
    u_lo = -math.log(d_far)
    u_hi = -math.log(d0)

    def f(u: float) -> float:
        d = math.exp(-u)
        return r_prime(params, g_c + side * d, st) * d

    val, _ = quad(f, u_lo, u_hi, epsabs=st.activation_abs,
                  epsrel=st.activation_rel, limit=st.quad_limit)
    return val


def _confluent_points(params: ModelParams) -> list[float]:
    """Quasienergies where an orbit turning point collides with a zero of
    the branch quadratic.  Only possible for mu >= 1; both points lie at
    or below the critical quasienergy.  R'(g) stays finite through them,
    but the traversal contours pinch and direct evaluation fails in a
    narrow band around each."""
    mu = params.mu
    if mu < 1.0:
        return []
    t = math.sqrt(mu - 1.0)
    base = -(mu - 1.0) - 0.25 * (mu - 1.0) ** 2
    shift = abs(params.alpha_d) * t
    return sorted({base - shift, base + shift})


def _rp_ok(params: ModelParams, g: float, st: Settings) -> bool:
    try:
        r_prime(params, g, st)
    except (CriticalPoint, ArithmeticError):
        return False
    return True


def _edge_out(params: ModelParams, g_star: float, sgn: float, cap: float,
              st: Settings):
    """First quasienergy g_star + sgn*h at which R' evaluates, with h
    doubling from twice the near-critical sliver; capped (inclusively) at
    cap.  Returns None if even cap fails."""
    h = 20.0 * st.critical_cutoff
    while True:
        g = g_star + sgn * h
        if (g >= cap) if sgn > 0.0 else (g <= cap):
            return cap if _rp_ok(params, cap, st) else None
        if _rp_ok(params, g, st):
            return g
        h *= 2.0


def _fold_data(raw) -> tuple[float, float, int, float]:
    """Fold constants (s1, s2, k, rho) of the interwell-time reduction,
    recovered from raw traversal data (tau1, t_half, t_ss, a_im, ...)."""
    t_half, t_ss = raw[1], raw[2]
    s1 = 1.0 if t_half.imag >= 0.0 else -1.0
    s2 = 1.0 if t_ss.imag >= 0.0 else -1.0
    x = s1 * t_half.imag
    yhat = s2 * t_ss.imag
    m = yhat % (2.0 * x)
    k = int(round((yhat - m) / (2.0 * x)))
    rho = 1.0 if m >= x else -1.0
    return s1, s2, k, rho


def _half_r_prime_from_raw(raw, fold) -> float:
    s1, s2, k, rho = fold
    x = s1 * raw[1].imag
    yhat = s2 * raw[2].imag
    return (1.0 + rho + 2.0 * rho * k) * x - rho * yhat - raw[3]


def _band_action_integral(params: ModelParams, g1: float, g2: float,
                          st: Settings) -> float:
    """Integral of R' over [g1, g2] by action differences at the ends.

    Each imaginary time in the folded form of R'(g) is the g-derivative
    of a regularized action along the same contour, so with fixed fold
    constants the integral telescopes to endpoint action differences.
    The fold constants must agree at both ends, and the folded form is
    checked against the direct R' there before use.  This covers bands
    around confluent points where direct quadrature cannot sample.
    """
    params_c, _ = _canonical(params)
    raw1 = _interwell_actions(params_c, g1, st)
    raw2 = _interwell_actions(params_c, g2, st)
    fold1 = _fold_data(raw1)
    fold2 = _fold_data(raw2)
    if fold1 != fold2:
        raise ArithmeticError(
            "interwell fold constants change across a confluent band; "
            f"cannot telescope the band integral ({fold1} vs {fold2})")
    for g_e, raw in ((g1, raw1), (g2, raw2)):
        direct = r_prime(params, g_e, st)
        folded = 2.0 * _half_r_prime_from_raw(raw, fold1)
        if abs(folded - direct) > 1e-7 * max(1.0, abs(direct)):
            raise ArithmeticError(
                f"folded traversal rate off by {abs(folded - direct):.3e} "
                f"from the direct value at g = {g_e:.9g}")
    s1, s2, k, rho = fold1
    d_half = raw2[4].imag - raw1[4].imag
    d_ss = raw2[5].imag - raw1[5].imag
    d_star = raw2[6] - raw1[6]
    return 2.0 * ((1.0 + rho + 2.0 * rho * k) * s1 * d_half
                  - rho * s2 * d_ss - d_star)


def _left_piece_with_bands(params: ModelParams, g_c: float, lo: float,
                           hi: float, st: Settings) -> float:
    """Integral of R' over [lo, hi] below g_c, carving out confluent
    bands and integrating them by action differences."""
    d0 = 10.0 * st.critical_cutoff
    geo = stationary_points(params, st)
    g_floor = min(geo.g_min.values())
    total = 0.0
    cur = lo
    for g_star in _confluent_points(params):
        if g_star <= g_floor or g_star >= g_c:
            continue
        if _rp_ok(params, g_star, st):
            continue
        b_lo = _edge_out(params, g_star, -1.0, max(cur, g_floor), st)
        b_hi = _edge_out(params, g_star, +1.0, min(hi, g_c - d0), st)
        if b_lo is None or b_hi is None:
            raise CriticalPoint(
                f"no resolvable edge for the confluent band at "
                f"g = {g_star:.9g} inside the integration range")
        if b_hi <= cur or b_lo >= hi:
            continue
        b_lo = max(b_lo, cur)
        b_hi = min(b_hi, hi)
        if cur < b_lo:
            total += _piece_integral(params, g_c, -1.0, g_c - b_lo,
                                     g_c - cur, st)
        total += _band_action_integral(params, b_lo, b_hi, st)
        cur = b_hi
    if cur < hi:
        total += _piece_integral(params, g_c, -1.0, g_c - hi, g_c - cur, st)
    return total


def _integral_r_prime(params: ModelParams, a: float, b: float,
                      st: Settings) -> float:
    """Integral of R' over [a, b] (b >= a), splitting at g_c if crossed."""
    if not b > a:
        return 0.0
    g_c, _ = critical_quasienergy(params)
    total = 0.0
    lo, hi = a, min(b, g_c)
    if lo < hi:
        total += _left_piece_with_bands(params, g_c, lo, hi, st)
    lo, hi = max(a, g_c), b
    if lo < hi:
        total += _piece_integral(params, g_c, +1.0, lo - g_c, hi - g_c, st)
    return total


def activation_energy(params: ModelParams, well,
                      settings: Settings = DEFAULT) -> float:
    """Activation energy R_A of one well: the integral of R' from the
    well bottom to the saddle quasienergy.

    The switching rate out of the well is of order exp(-R_A / lam).  The
    logarithmic singularity of R' at g_c inside the integration range is
    integrable and handled by an exponential substitution on each side.
    Requires the double-well regime.
    """
    sigma = _as_well_sigma(params, well)
    geo = stationary_points(params, settings)
    geo.require_double_well()
    span = geo.g_s - min(geo.g_min.values())
    return _integral_r_prime(params,
                             geo.g_min[sigma] + _EDGE_EPS * span,
                             geo.g_s - _EDGE_EPS * span,
                             settings)


def delta_activation(params: ModelParams,
                     settings: Settings = DEFAULT) -> float:
    """Difference of activation energies R_A(+1) - R_A(-1).

    Equal to the integral of R' between the two well minima, oriented from
    the deep to the shallow one, so for alpha_d > 0 (deep well at sigma =
    +1) it is positive and equals R_A(deep) - R_A(shallow); it is odd in
    alpha_d.  For a small bias it grows linearly, with the logarithmic
    susceptibility as the slope.
    """
    geo = stationary_points(params, settings)
    geo.require_double_well()
    g_plus, g_minus = geo.g_min[+1], geo.g_min[-1]
    if g_plus == g_minus:
        return 0.0
    span = geo.g_s - min(g_plus, g_minus)
    off = _EDGE_EPS * span
    mag = _integral_r_prime(params, min(g_plus, g_minus) + off,
                            max(g_plus, g_minus) + off, settings)
    return mag if g_plus < g_minus else -mag


# ======================================================================
# quasistationary distribution over a ladder
# ======================================================================

def _balance_operator(n_lev: int, rates: RateTable) -> np.ndarray:
    """Master operator L with d rho / dt = L rho restricted to one ladder."""
    L = np.zeros((n_lev, n_lev))
    for (n, m), w in rates.entries.items():
        if w > 0.0 and 0 <= n + m < n_lev:
            L[n + m, n] += w
            L[n, n] -= w
    return L


def quasistationary_distribution(params: ModelParams, ladder: LevelLadder,
                                 rates: RateTable,
                                 settings: Settings = DEFAULT
                                 ) -> DistributionProfile:
    """Stationary populations of one ladder by two independent routes.

    Route one integrates R' level to level and exponentiates:
    rho_n = C_w exp(-R(g_n)/lam).  Route two takes the null vector of the
    intrawell balance operator assembled from the rate table.  Both are
    returned, with the largest relative discrepancy of their log-slopes
    over resolvable neighbor pairs as a cross-check figure.

    Raises LocalizationPoint when g_c sits at this well's bottom (the
    ladder then has no dissipative route out of the ground state, and no
    quasistationary shape is selected), and NullSpaceDegenerate when the
    balance operator has more than one numerical zero mode.
    """
    sigma = ladder.well.sigma
    geo = stationary_points(params, settings)
    if sigma not in geo.g_min:
        raise OutsideWellRange(f"no well with sigma = {sigma} in this regime")
    g_min = geo.g_min[sigma]
    scale = max(abs(g_min), abs(geo.g_c), 1e-3)
    if abs(geo.g_c - g_min) <= settings.localization_tol * scale:
        raise LocalizationPoint(
            f"g_c = {geo.g_c:.6g} coincides with the bottom {g_min:.6g} of "
            f"the sigma = {sigma:+d} well: the ground state decouples and "
            "the ladder selects no quasistationary distribution")
    if len(ladder) == 0:
        raise ValueError("empty ladder")

    lam = params.lam
    gs = [lev.g for lev in ladder]
    samples = tuple((g, r_prime(params, g, settings)) for g in gs)

    top = geo.g_s if geo.g_s is not None else gs[-1]
    off = _EDGE_EPS * (top - g_min)
    R = [_integral_r_prime(params, g_min + off, gs[0], settings)]
    for g_lo, g_hi in zip(gs[:-1], gs[1:]):
        R.append(R[-1] + _integral_r_prime(params, g_lo, g_hi, settings))

    shifted = np.exp(-(np.asarray(R) - R[0]) / lam)
    rho = shifted / shifted.sum()
    normalization = math.exp(R[0] / lam) / shifted.sum()

    n_lev = len(ladder)
    if n_lev == 1:
        rho_bal = np.ones(1)
        discrepancy = 0.0
    else:
        L = _balance_operator(n_lev, rates)
        s = np.linalg.svd(L, compute_uv=False)
        tol = 1e-10 * max(s[0], 1.0)
        if s[-2] <= tol:
            raise NullSpaceDegenerate(
                f"two smallest singular values {s[-1]:.3e}, {s[-2]:.3e} of "
                "the balance operator are both below tolerance")
        _, _, vt = np.linalg.svd(L)
        v = vt[-1]
        if v.sum() < 0.0:
            v = -v
        v = np.clip(v, 0.0, None)
        if not v.sum() > 0.0:
            raise NullSpaceDegenerate("balance null vector has no mass")
        rho_bal = v / v.sum()

        discrepancy = 0.0
        floor = _RESOLVE_FLOOR * rho_bal.max()
        for k in range(n_lev - 1):
            if rho_bal[k] <= floor or rho_bal[k + 1] <= floor:
                continue
            slope = (math.log(rho_bal[k + 1]) - math.log(rho_bal[k])) \
                / (gs[k + 1] - gs[k])
            ref = -0.5 * (samples[k][1] + samples[k + 1][1]) / lam
            discrepancy = max(discrepancy, abs(slope / ref - 1.0))

    return DistributionProfile(
        well=ladder.well,
        samples=samples,
        R=tuple(R),
        rho=tuple(float(x) for x in rho),
        rho_balance=tuple(float(x) for x in rho_bal),
        slope_discrepancy=float(discrepancy),
        normalization=float(normalization),
    )


# ======================================================================
# closed-form limits of the activation energy
# ======================================================================

def log_susceptibility(mu: float) -> float:
    """Linear response of the activation energy to a small bias.

    For small alpha_d the activation energies split linearly,
    R_A(sigma) = R_A0 + sigma * alpha_d * R_A1, and the slope has the
    closed form

        R_A1 = log[(sqrt(mu + 1) + 1) / |sqrt(mu + 1) - 1|],

    equal to sqrt(mu + 1) times the unbiased bottom slope R'(g_min); it
    decreases monotonically to zero as mu grows.  The expansion fails for
    small |mu| (the logarithm diverges as g_c reaches the well bottoms),
    so |mu| < 0.05 is rejected, as is mu <= -1 (no wells).
    """
    if mu <= -1.0:
        raise ValueError(f"mu = {mu:g} out of range: mu > -1 required")
    if abs(mu) < 0.05:
        raise ValueError(
            f"mu = {mu:g} too close to 0: the linear-response slope "
            "diverges at mu = 0 and the expansion is unusable for "
            "|mu| < 0.05")
    s = math.sqrt(1.0 + mu)
    return math.log((s + 1.0) / abs(s - 1.0))


def prebifurcation_activation(mu: float, delta_alpha: float) -> float:
    """Shallow-well activation energy just below the merging bias.

    With delta_alpha = |alpha_d| - alpha_B < 0 small, the shallow well is
    a cubic pocket and

        R_A = (8 / (2 - mu)) |delta_alpha|^(3/2) / [3 (1 + mu)]^(1/4),

    the 3/2-power scaling characteristic of switching near a merging
    point.  Valid for -1 < mu < 2 and small |delta_alpha|; accuracy
    degrades as sqrt(|delta_alpha|).
    """
    if not -1.0 < mu < 2.0:
        raise ValueError(f"mu = {mu:g} out of range: -1 < mu < 2 required")
    if not delta_alpha < 0.0:
        raise ValueError(
            f"delta_alpha = {delta_alpha:g} not negative: the shallow well "
            "exists only below the bifurcation bias")
    if not abs(delta_alpha) < 1.0:
        raise ValueError(
            f"|delta_alpha| = {abs(delta_alpha):g} too large for the "
            "merging-point expansion")
    return (8.0 / (2.0 - mu)) * abs(delta_alpha) ** 1.5 \
        / (3.0 * (1.0 + mu)) ** 0.25


def area_formula_rprime(params: ModelParams, g: float, well,
                        settings: Settings = DEFAULT) -> float:
    """R'(g) as twice the ratio of two area integrals over the well lobe.

    M(g) is the phase-plane area enclosed by the orbit at quasienergy g
    and N(g) is half the integral of the Laplacian of g(Q, P) over the
    same region; then R' = 2 M / N in the regime where the well is a
    shallow pocket (soft Q-curvature near the merging bias), with the
    exact prebifurcation limit 6 / (2 - mu).  In a harmonic well the
    ratio gives 4 / (A_P + A_Q), so away from the pocket regime it is
    only an order-of-magnitude check.  Both integrals are evaluated as
    iterated quadratures over the enclosed region, independently of the
    complex-time route.

    The vertical slices of the lobe must be simple segments, which fails
    when the well interval meets the circle Q^2 = mu - 1 (mu > 1); such
    inputs are rejected.
    """
    sigma = _as_well_sigma(params, well)
    params_c, mirrored = _canonical(params)
    sigma_c = -sigma if mirrored else sigma
    fr = _frame_cached(params_c, g, settings)
    _require_orbit_g(fr)
    a, b = _well_interval(fr, sigma_c)
    mu = params_c.mu
    if mu > 1.0:
        r = math.sqrt(mu - 1.0)
        if b > -r and a < r:
            raise OutsideWellRange(
                f"well interval [{a:.6g}, {b:.6g}] meets the circle "
                "Q^2 = mu - 1: vertical slices of the lobe are not simple")
    ia, ib = _root_index(fr, a), _root_index(fr, b)
    mid = 0.5 * (a + b)
    sm_a = math.sqrt(mid - a)
    sm_b = math.sqrt(b - mid)

    # M = int 2 P dQ, N = int [2 (2 Q^2 - mu) P + (4/3) P^3] dQ over
    # [a, b], with Q = a + s^2 / b - s^2 and P = s sqrt(h) so the
    # square-root turning-point factors cancel analytically.
    def m_term(x: float, p: float) -> float:
        return 2.0 * p

    def n_term(x: float, p: float) -> float:
        return 2.0 * (2.0 * x * x - mu) * p + (4.0 / 3.0) * p ** 3

    def lo(term):
        def f(s: float) -> float:
            x = a + s * s
            p = s * math.sqrt(_cofactor(fr, x, ia))
            return term(x, p) * 2.0 * s
        return f

    def hi(term):
        def f(s: float) -> float:
            x = b - s * s
            p = s * math.sqrt(_cofactor(fr, x, ib))
            return term(x, p) * 2.0 * s
        return f

    m_area = (_quad_real(lo(m_term), 0.0, sm_a, settings)
              + _quad_real(hi(m_term), 0.0, sm_b, settings))
    n_area = (_quad_real(lo(n_term), 0.0, sm_a, settings)
              + _quad_real(hi(n_term), 0.0, sm_b, settings))
    if not n_area > 0.0:
        raise ArithmeticError(
            f"curvature integral N = {n_area:.6g} not positive over "
            f"[{a:.6g}, {b:.6g}]")
    return 2.0 * m_area / n_area


# ======================================================================
# resonances and the switching-rate estimate
# ======================================================================

def resonance_offsets(params: ModelParams,
                      settings: Settings = DEFAULT) -> list[int]:
    """Nonzero integers m with |alpha_d - m lam| inside the window.

    At such biases levels of the two ladders align (up to the offset m in
    level index) and interwell resonance corrections to the kinetics
    kick in; off resonance the list is empty.  m = 0 is excluded: zero
    bias makes the wells symmetric, not resonant.
    """
    lam = params.lam
    if not lam > 0.0:
        raise ValueError("lam must be positive")
    out = []
    m0 = round(params.alpha_d / lam)
    for m in (m0 - 1, m0, m0 + 1):
        if m != 0 and abs(params.alpha_d - m * lam) < settings.resonance_window:
            out.append(m)
    return sorted(out)


def switching_rate_estimate(params: ModelParams,
                            settings: Settings = DEFAULT) -> ActivationResult:
    """Activation energies of both wells and the rates they imply.

    The exponents R_A(sigma)/lam are controlled results; the prefactor is
    reported as kappa, a documented order-of-magnitude placeholder (the
    exact prefactor requires fluctuation analysis around the optimal path
    and is not computed here).  w_sw may underflow to exact zero for very
    small lam; the exponent fields remain meaningful there.
    """
    geo = stationary_points(params, settings)
    geo.require_double_well()
    r_a = {s: activation_energy(params, s, settings) for s in (+1, -1)}
    d = deep_well(params).sigma
    s_w = shallow_well(params).sigma
    lam = params.lam
    exponent = {s: r_a[s] / lam for s in (+1, -1)}
    w_sw = {s: params.kappa * math.exp(-exponent[s]) for s in (+1, -1)}
    return ActivationResult(
        r_a=MappingProxyType(r_a),
        delta_r_a=r_a[d] - r_a[s_w],
        population_ratio_exponent=(r_a[+1] - r_a[-1]) / lam,
        switching_exponent=MappingProxyType(exponent),
        prefactor_estimate=params.kappa,
        w_sw=MappingProxyType(w_sw),
    )
