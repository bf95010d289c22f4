"""Bohr-Sommerfeld ladders and dissipative transition rates.

Each well supports a ladder of Floquet quasienergy levels fixed by the
quantization condition I(g_n) = lam * (n + 1/2) on the monotone intrawell
action.  Dissipative transitions between ladder states are controlled by
the Fourier components a_m(g) of the classical lowering amplitude

    a(t) = (P(t) - i Q(t)) / sqrt(2 lam),
    a(t) = sum_m a_m(g) exp(i m omega(g) t),

evaluated on the orbit at quasienergy g.  The orbit continues to a
meromorphic function of complex time whose only poles in the fundamental
period cell are tau* and tau**, so the Fourier integral closes into a
two-pole geometric sum

    a_m(g) = -i omega / sqrt(2 lam)
             * [exp(-i m phi*) - exp(-i m phi**)] / [1 - exp(-i m phi2)],

with phi = omega * tau for each of tau*, tau**, tau2.  This is the form
implemented here (the m = 0 component, a 0/0 limit of the sum, is
computed as a direct orbit average instead).  For the well opposite the
anchor well the orbit is the complex-time continuation by tau2/2, which
shifts the pole phases to

    phi~*  = phi** - phi2 / 2,      phi~** = phi*  + phi2 / 2,

and exchanges the two pole types: the relative minus sign between the
numerator exponentials is fixed by the residues, which travel with the
types, so the shifted sum carries an extra overall factor of -1.

Matrix elements of the ladder operator between neighboring Floquet states
are semiclassically <n+m| a |n> ~ a_m(g_n), and at zero temperature the
transition rates are W_{n,n+m} = 2 kappa |a_m(g_n)|^2.  Downward rates
dominate: the ratio of rates m steps up to m steps down is
exp(2 m Im(phi* + phi** - phi2)) < 1, the detailed-balance factor.

Phases of individual a_m depend on the time-origin convention (anchored
at the deep-well inner turning point); all physical outputs depend on
|a_m| only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping

import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT, Settings
from .errors import NoBoundStates
from .landscape import (
    ModelParams,
    WellId,
    _as_well_sigma,
    deep_well,
    stationary_points,
    wells,
)
from .orbits import (
    action_and_period,
    complex_period,
    integrate_orbit,
    pole_positions,
    turning_points,
)

__all__ = [
    "Level",
    "LevelLadder",
    "RateTable",
    "quantize_well",
    "fourier_matrix_element",
    "transition_rates",
    "detailed_balance_ratio",
]


# ======================================================================
# data types
# ======================================================================

@dataclass(frozen=True)
class Level:
    """One quantized level: I(g_n) = lam * (n + 1/2)."""

    n: int
    g: float
    action: float
    omega: float


@dataclass(frozen=True)
class LevelLadder:
    """Quantized levels of one well, ordered by n."""

    well: WellId
    levels: tuple[Level, ...]

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[Level]:
        return iter(self.levels)

    def g_of(self, n: int) -> float:
        return self.levels[n].g


@dataclass(frozen=True)
class RateTable:
    """Transition rates W_{n,n+m} = 2 kappa |a_m(g_n)|^2 for one ladder.

    entries maps (n, m) to the rate from level n to level n + m; pairs
    absent from the map have zero rate.  Rates smaller than the relative
    floor (times the largest entry) are stored as exact zeros.
    """

    well: WellId
    entries: Mapping[tuple[int, int], float]
    m_max: int

    def rate(self, n: int, m: int) -> float:
        return self.entries.get((n, m), 0.0)


# ======================================================================
# quantization
# ======================================================================

def _action(params: ModelParams, g: float, sigma: int, st: Settings) -> float:
    return action_and_period(params, g, sigma, st)[0]


def _right_pair_topology(params: ModelParams, g: float, st: Settings) -> bool:
    tp = turning_points(params, g, st)
    if tp.n_real != 2:
        return False
    comp = max(z.real for z in tp.q if z.imag != 0.0)
    return comp < min(z.real for z in tp.q if z.imag == 0.0)


def _single_well_cap(params: ModelParams, g_floor: float,
                     st: Settings) -> float:
    """Largest quasienergy with the complex turning-point pair still left
    of the real pair.

    In the single-well regime there is no saddle to bound the ladder; the
    interwell continuation (hence the rate formulas) is defined only while
    the root topology keeps this form, so the ladder is truncated there.
    """
    step = 0.5 * max(1.0, abs(g_floor))
    lo = g_floor + 1e-9 * step
    if not _right_pair_topology(params, lo, st):
        raise ArithmeticError(
            "unexpected root topology just above the single-well minimum")
    hi = lo
    for _ in range(80):
        hi = hi + step
        if not _right_pair_topology(params, hi, st):
            break
        step *= 2.0
    else:
        raise ArithmeticError("single-well topology cap not found")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _right_pair_topology(params, mid, st):
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, abs(hi)):
            break
    return lo


def quantize_well(params: ModelParams, well,
                  settings: Settings = DEFAULT) -> LevelLadder:
    """Quantized level ladder of one well: I(g_n) = lam * (n + 1/2).

    Levels are found by bracketed root finding on the monotone map
    g -> I(g) between the well bottom and the saddle value (double-well)
    or the topology cap (single-well).  Raises NoBoundStates when even
    n = 0 does not fit below the top.
    """
    sigma = _as_well_sigma(params, well)
    geo = stationary_points(params)
    if sigma not in geo.g_min:
        raise NoBoundStates(f"no well with sigma={sigma} in this regime")
    g_floor = geo.g_min[sigma]

    if geo.double_well:
        g_cap = geo.g_s
    else:
        g_cap = _single_well_cap(params, g_floor, settings)
    span = g_cap - g_floor
    g_lo = g_floor + 1e-11 * span
    g_hi = g_cap - 1e-9 * span
    i_top = _action(params, g_hi, sigma, settings)

    lam = params.lam
    if 0.5 * lam > i_top:
        raise NoBoundStates(
            f"lam/2 = {0.5 * lam:.6g} exceeds the well action "
            f"{i_top:.6g} at the ladder top")

    levels = []
    n = 0
    while lam * (n + 0.5) <= i_top:
        target = lam * (n + 0.5)
        g_n = brentq(lambda g: _action(params, g, sigma, settings) - target,
                     g_lo, g_hi, xtol=1e-14 * max(1.0, span), rtol=1e-15)
        act, _, om = action_and_period(params, g_n, sigma, settings)
        levels.append(Level(n=n, g=float(g_n), action=act, omega=om))
        g_lo = g_n            # the next root lies to the right
        n += 1
    return LevelLadder(well=wells(params)[sigma], levels=tuple(levels))


# ======================================================================
# Fourier components of the lowering amplitude
# ======================================================================

def _pole_phases(params: ModelParams, g: float, sigma: int, st: Settings
                 ) -> tuple[float, complex, complex, complex, float]:
    """(omega, phi*, phi**, phi2, sign) for the requested well.

    The anchor well is the deep one (inner turning point at the time
    origin); the opposite well gets the tau2/2-shifted pole phases and
    the overall residue sign of -1 from the pole-type exchange.
    """
    _, _, omega = action_and_period(params, g, deep_well(params).sigma, st)
    tau_star, tau_ss = pole_positions(params, g, st)
    tau2 = complex_period(params, g, st)
    phi_s, phi_ss, phi2 = omega * tau_star, omega * tau_ss, omega * tau2
    sign = 1.0
    if sigma != deep_well(params).sigma:
        phi_s, phi_ss = phi_ss - 0.5 * phi2, phi_s + 0.5 * phi2
        sign = -1.0
    return omega, phi_s, phi_ss, phi2, sign


def _orbit_mean_amplitude(params: ModelParams, g: float, sigma: int,
                          st: Settings) -> complex:
    tau0 = 0.0 + 0.0j
    if sigma != deep_well(params).sigma:
        tau0 = complex_period(params, g, st) / 2.0
    out = integrate_orbit(params, g, tau0=tau0, n_samples=1025)
    Q = out.Q[:-1]
    P = out.P[:-1]
    return complex(np.mean(P - 1j * Q)) / math.sqrt(2.0 * params.lam)


def fourier_matrix_element(params: ModelParams, g: float, m: int, well,
                           settings: Settings = DEFAULT) -> complex:
    """Fourier component a_m(g) of the lowering amplitude on one orbit.

    Semiclassically <n+m| a |n> ~ a_m(g_n).  For m != 0 the two-pole sum
    is used, arranged so that only decaying exponentials appear for either
    sign of m; |a_m| falls off exponentially in both directions.  The
    m = 0 component (the orbit mean, a 0/0 limit of the sum) is returned
    for diagnostics and never enters rates.
    """
    sigma = _as_well_sigma(params, well)
    if m == 0:
        return _orbit_mean_amplitude(params, g, sigma, settings)

    omega, phi_s, phi_ss, phi2, sign = _pole_phases(params, g, sigma,
                                                    settings)
    pref = sign * -1j * omega / math.sqrt(2.0 * params.lam)
    if m > 0:
        # multiplied through by exp(i m phi2): every exponent decays
        num = cmath.exp(1j * m * (phi2 - phi_s)) \
            - cmath.exp(1j * m * (phi2 - phi_ss))
        den = cmath.exp(1j * m * phi2) - 1.0
    else:
        num = cmath.exp(-1j * m * phi_s) - cmath.exp(-1j * m * phi_ss)
        den = 1.0 - cmath.exp(-1j * m * phi2)
    if abs(den) < settings.resonant_denominator:
        # unreachable while Im phi2 > 0; kept as a guard against a
        # degenerate period lattice slipping through upstream checks
        raise ArithmeticError(
            f"resonant denominator |1 - exp(-i m phi2)| = {abs(den):.2e} "
            f"at m = {m}")
    return pref * num / den


# ======================================================================
# transition rates and detailed balance
# ======================================================================

def _rate(params: ModelParams, g: float, m: int, well,
          st: Settings) -> float:
    a = fourier_matrix_element(params, g, m, well, st)
    return 2.0 * params.kappa * abs(a) ** 2


def transition_rates(params: ModelParams, ladder: LevelLadder,
                     settings: Settings = DEFAULT) -> RateTable:
    """Zero-temperature dissipative rates W_{n,n+m} over one ladder.

    All |m| <= m_max with n + m inside the ladder are computed; beyond
    m_max the order is extended while the rate still exceeds the relative
    floor, so truncation only ever drops sub-floor entries.  Entries below
    the floor are stored as exact zeros.
    """
    if len(ladder) == 0:
        raise NoBoundStates("empty ladder")
    m_max = settings.m_max
    n_lev = len(ladder)
    well = ladder.well
    raw: dict[tuple[int, int], float] = {}
    for lev in ladder:
        for m in range(-m_max, m_max + 1):
            if m != 0 and 0 <= lev.n + m < n_lev:
                raw[(lev.n, m)] = _rate(params, lev.g, m, well, settings)
    if not raw:
        return RateTable(well=well, entries=MappingProxyType({}), m_max=0)
    w_top = max(raw.values())
    floor = settings.rate_floor * w_top

    # extend past m_max while entries stay above the floor
    for lev in ladder:
        for direction in (+1, -1):
            m = direction * (m_max + 1)
            while 0 <= lev.n + m < n_lev:
                w = _rate(params, lev.g, m, well, settings)
                if w < floor:
                    break
                raw[(lev.n, m)] = w
                m += direction

    entries = {k: (v if v >= floor else 0.0) for k, v in raw.items()}
    eff_m_max = max(abs(m) for (_, m), v in entries.items() if v > 0.0)
    return RateTable(well=well, entries=MappingProxyType(entries),
                     m_max=eff_m_max)


def detailed_balance_ratio(params: ModelParams, g: float, m: int,
                           settings: Settings = DEFAULT) -> float:
    """Closed-form ratio of the m-step-up to the m-step-down rate.

    W_{n-m,n} / W_{n+m,n} = exp(2 m Im(phi* + phi** - phi2)), from pole
    and period data alone.  The exponent is -m * omega * R'(g) < 0 for
    m >= 1: climbing the ladder is exponentially suppressed, which is the
    detailed-balance side of R' > 0.  Identical for both wells.
    """
    if m < 0:
        raise ValueError("detailed_balance_ratio requires m >= 0")
    if m == 0:
        return 1.0
    _, phi_s, phi_ss, phi2, _ = _pole_phases(
        params, g, deep_well(params).sigma, settings)
    return math.exp(2.0 * m * (phi_s + phi_ss - phi2).imag)
