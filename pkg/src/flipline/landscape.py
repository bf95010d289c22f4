"""Quasienergy landscape of the dynamically biased parametric oscillator.

The classical scaled quasienergy in the rotating frame is

    g(Q, P) = (Q^2 + P^2 - mu)^2 / 4 + (P^2 - Q^2) / 2 - mu^2/4 - alpha_d * Q

with detuning parameter mu and dynamical bias alpha_d.  For small |alpha_d|
the surface has two minima (wells) located on the P = 0 axis at the outer
real roots of

    Q^3 - (mu + 1) Q - alpha_d = 0,

separated by a saddle at the middle root.  The bias tilts the surface: for
alpha_d > 0 the deep well sits at Q > 0.  When |alpha_d| exceeds the
bifurcation value alpha_B = 2 [(1+mu)/3]^(3/2) the shallow well merges with
the saddle and disappears (single-well regime).

Conventions used throughout the package:

* wells are identified by sigma = +1 (Q > 0) or sigma = -1 (Q < 0);
* "deep" is the well with the lower minimum quasienergy; at alpha_d = 0 the
  two wells are degenerate and both carry the role "symmetric";
* g_c = -[(1-mu)^2 - alpha_d^2]/4 is the critical quasienergy at which the
  branch points Q_+/- of the momentum collide on the real axis (at
  Q_c = -alpha_d/2); interwell traversal times diverge logarithmically there.

The saddle is a genuine saddle of g(Q, P) only while the momentum curvature
A_P(Q_s) = Q_s^2 - mu + 1 stays positive; that bounds the double-well
analysis to mu < Q_s^2 + 1 (and in particular mu <= 2).  Geometry operations
reject mu > 2 outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .config import DEFAULT, Settings
from .errors import SingleWellRegime

__all__ = [
    "ModelParams",
    "WellId",
    "LandscapeGeometry",
    "eval_g",
    "stationary_points",
    "critical_quasienergy",
    "bifurcation_amplitude",
    "well_curvatures",
    "deep_well",
    "shallow_well",
    "wells",
]


@dataclass(frozen=True)
class ModelParams:
    """Model parameters.

    mu       scaled detuning of the drive from twice the eigenfrequency
    alpha_d  scaled amplitude of the additional dynamical (bias) drive
    lam      dimensionless Planck constant of the scaled problem
    kappa    scaled half linewidth (decay rate) entering the transition rates
    """

    mu: float
    alpha_d: float
    lam: float
    kappa: float

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        for name in ("mu", "alpha_d"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")


@dataclass(frozen=True)
class WellId:
    """Identifies one well by the sign of Q at its minimum.

    role is derived from the parameters: "deep", "shallow", or "symmetric"
    (the alpha_d = 0 case, where both wells are equivalent).
    """

    sigma: int
    role: str

    def __post_init__(self):
        if self.sigma not in (-1, +1):
            raise ValueError(f"sigma must be -1 or +1, got {self.sigma}")
        if self.role not in ("deep", "shallow", "symmetric"):
            raise ValueError(f"unknown role {self.role!r}")


def deep_well(params: ModelParams) -> WellId:
    if params.alpha_d == 0.0:
        return WellId(+1, "symmetric")
    return WellId(+1 if params.alpha_d > 0 else -1, "deep")


def shallow_well(params: ModelParams) -> WellId:
    if params.alpha_d == 0.0:
        return WellId(-1, "symmetric")
    return WellId(-1 if params.alpha_d > 0 else +1, "shallow")


def wells(params: ModelParams) -> Dict[int, WellId]:
    d, s = deep_well(params), shallow_well(params)
    return {d.sigma: d, s.sigma: s}


def _as_well_sigma(params: ModelParams, well) -> int:
    """Accept a WellId, a bare sigma, or a role string."""
    if isinstance(well, WellId):
        return well.sigma
    if well in (-1, +1):
        return int(well)
    if well == "deep":
        return deep_well(params).sigma
    if well == "shallow":
        return shallow_well(params).sigma
    raise ValueError(f"cannot interpret well {well!r}")


@dataclass(frozen=True)
class LandscapeGeometry:
    """Stationary-point data of the landscape for one parameter set.

    q_min/g_min map sigma -> position/value of the corresponding minimum.
    q_s/g_s are None in the single-well regime.  regime is "double-well" or
    "single-well".  saddle_transverse_ok records the documented inequality
    A_P(Q_s) > 0 (the on-axis maximum is a genuine saddle of g(Q, P)).
    """

    params: ModelParams
    q_min: Dict[int, float]
    g_min: Dict[int, float]
    q_s: Optional[float]
    g_s: Optional[float]
    g_c: float
    q_c: float
    alpha_B: float
    regime: str
    saddle_transverse_ok: bool = field(default=True)

    @property
    def double_well(self) -> bool:
        return self.regime == "double-well"

    def require_double_well(self):
        if not self.double_well:
            raise SingleWellRegime(
                f"|alpha_d| = {abs(self.params.alpha_d):g} exceeds the "
                f"bifurcation value {self.alpha_B:g} for mu = {self.params.mu:g}"
            )


def eval_g(params: ModelParams, Q, P):
    """Scaled quasienergy g(Q, P); accepts scalars or arrays, real or complex."""
    Q = np.asarray(Q)
    P = np.asarray(P)
    r2 = Q * Q + P * P
    val = 0.25 * (r2 - params.mu) ** 2 + 0.5 * (P * P - Q * Q) \
        - 0.25 * params.mu ** 2 - params.alpha_d * Q
    return val if val.ndim else val[()]


def _polish_real_root(coeffs: np.ndarray, x: float, residual_tol: float) -> float:
    """One Newton step on a monic real polynomial, then verify the residual."""
    p = np.polynomial.Polynomial(coeffs[::-1])
    dp = p.deriv()
    d = dp(x)
    if abs(d) > 1e-12:
        x = x - p(x) / d
    scale = max(1.0, np.max(np.abs(coeffs)))
    if abs(p(x)) > residual_tol * scale * 100:
        raise ArithmeticError(f"root polish failed: residual {abs(p(x)):.2e}")
    return float(x)


def bifurcation_amplitude(mu: float) -> float:
    """Bias amplitude at which the shallow well merges with the saddle.

    alpha_B = 2 [(1+mu)/3]^(3/2).  The well range collapses at mu = -1
    (alpha_B = 0); below that there is nothing to bifurcate.
    """
    if mu < -1.0:
        raise ValueError(f"no double-well range for mu = {mu} < -1")
    return 2.0 * ((1.0 + mu) / 3.0) ** 1.5


def critical_quasienergy(params: ModelParams) -> tuple[float, float]:
    """Return (g_c, q_c): the branch-point collision value and position."""
    g_c = -0.25 * ((1.0 - params.mu) ** 2 - params.alpha_d ** 2)
    q_c = -0.5 * params.alpha_d
    return g_c, q_c


def stationary_points(params: ModelParams, settings: Settings = DEFAULT) -> LandscapeGeometry:
    """Locate and classify the stationary points of g(Q, 0).

    Roots of the cubic Q^3 - (mu+1) Q - alpha_d come from the companion
    matrix, polished by one Newton step.  Three distinct real roots give the
    double-well regime (outer roots are minima along Q, the middle one is the
    saddle); one real root, or a degenerate pair within the configured
    spacing, gives the single-well regime.
    """
    mu, alpha = params.mu, params.alpha_d
    if mu > 2.0:
        raise ValueError(
            f"mu = {mu} > 2: the on-axis saddle is no longer a saddle of "
            "g(Q, P); the double-well analysis does not apply"
        )

    coeffs = np.array([1.0, 0.0, -(mu + 1.0), -alpha])
    roots = np.roots(coeffs)
    real = []
    for r in roots:
        if abs(r.imag) < 1e-8 * max(1.0, abs(r.real)):
            real.append(_polish_real_root(coeffs, r.real, settings.root_residual))
    real.sort()

    # collapse near-degenerate pairs (bifurcation boundary)
    distinct = []
    for r in real:
        if distinct and abs(r - distinct[-1]) < settings.degenerate_root:
            continue
        distinct.append(r)

    g_c, q_c = critical_quasienergy(params)
    alpha_B = bifurcation_amplitude(mu) if mu >= -1.0 else 0.0

    if len(distinct) >= 3:
        q_lo, q_sad, q_hi = distinct[0], distinct[1], distinct[2]
        q_min = {+1: q_hi, -1: q_lo}
        g_min = {s: float(eval_g(params, q, 0.0)) for s, q in q_min.items()}
        g_sad = float(eval_g(params, q_sad, 0.0))
        a_p_saddle = q_sad * q_sad - mu + 1.0
        return LandscapeGeometry(
            params=params,
            q_min=q_min,
            g_min=g_min,
            q_s=q_sad,
            g_s=g_sad,
            g_c=g_c,
            q_c=q_c,
            alpha_B=alpha_B,
            regime="double-well",
            saddle_transverse_ok=bool(a_p_saddle > 0.0),
        )

    # single-well: the surviving minimum is the sole real root
    q0 = distinct[0] if distinct else real[0]
    sigma = +1 if q0 > 0 else -1
    return LandscapeGeometry(
        params=params,
        q_min={sigma: q0},
        g_min={sigma: float(eval_g(params, q0, 0.0))},
        q_s=None,
        g_s=None,
        g_c=g_c,
        q_c=q_c,
        alpha_B=alpha_B,
        regime="single-well",
        saddle_transverse_ok=True,
    )


def well_curvatures(params: ModelParams, well) -> tuple[float, float]:
    """Harmonic curvatures (A_P, A_Q) at the bottom of one well.

    A_P = Q_min^2 - mu + 1 and A_Q = 3 Q_min^2 - mu - 1; the small-amplitude
    intrawell frequency is omega_min = sqrt(A_P * A_Q).
    """
    sigma = _as_well_sigma(params, well)
    geo = stationary_points(params)
    if sigma not in geo.q_min:
        geo.require_double_well()
    q0 = geo.q_min[sigma]
    a_p = q0 * q0 - params.mu + 1.0
    a_q = 3.0 * q0 * q0 - params.mu - 1.0
    return a_p, a_q
