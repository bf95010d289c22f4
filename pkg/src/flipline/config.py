"""Numerical tolerances and budgets, overridable per call or via the CLI.

The defaults reproduce every frozen number in the test suite; they are not
meant to be tuned casually.  Root residuals are absolute, quadrature
tolerances are passed straight to the adaptive integrator.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    # polynomial roots
    root_residual: float = 1e-12      # |p(root)| after Newton polish
    degenerate_root: float = 1e-10    # spacing below which roots count as one

    # quadrature
    quad_rel: float = 1e-10
    quad_abs: float = 1e-12
    quad_limit: int = 500

    # activation-energy integrals (outer integral over g)
    activation_rel: float = 1e-9
    activation_abs: float = 1e-9

    # guards
    critical_cutoff: float = 1e-9     # |g - g_c| below this raises CriticalPoint
    pole_margin: float = 1e-6         # Im-distance to a pole line treated as a hit
    pole_bound: float = 1e6           # |Q|+|P| blow-up threshold for orbits
    localization_tol: float = 1e-9    # |g_c - g_min| band for LocalizationPoint
    resonance_window: float = 1e-9    # |alpha_d - m*lambda| band
    resonant_denominator: float = 1e-10

    # rates
    m_max: int = 12
    rate_floor: float = 1e-12         # relative floor for the rate table

    # oracle
    tail_mass: float = 1e-12          # max occupation of the last 20 basis rows
    dimension_step: int = 50          # basis sizes are multiples of this
    max_dimension: int = 1200         # compute budget; lambda < 0.03 exceeds it
    min_lambda: float = 0.03

    def with_overrides(self, **kw) -> "Settings":
        return replace(self, **kw)


DEFAULT = Settings()
