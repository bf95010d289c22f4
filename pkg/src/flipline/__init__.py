"""flipline: interwell switching quantities for a dynamically biased
parametric oscillator in the zero-temperature quantum-activation regime.

Library layers, bottom up:

* landscape    -- stationary points and regimes of the quasienergy surface
* orbits       -- complex-time orbit data: turning points, periods, poles
* semiclassics -- quantized ladders, Fourier components, transition rates
* kinetics     -- slope R'(g), activation energies, quasistationary states
* oracle       -- exact Fock-basis diagonalization used for validation
* cli          -- the `flipline` command-line front end
"""

__version__ = "0.1.0"

from .config import DEFAULT, Settings
from .errors import (
    CriticalPoint,
    FliplineError,
    LocalizationPoint,
    NoBoundStates,
    NullSpaceDegenerate,
    OutsideWellRange,
    ParseError,
    PoleProximity,
    SingleWellRegime,
    TruncationInsufficient,
    ValidationError,
)
from .landscape import (
    LandscapeGeometry,
    ModelParams,
    WellId,
    bifurcation_amplitude,
    critical_quasienergy,
    deep_well,
    eval_g,
    shallow_well,
    stationary_points,
    well_curvatures,
    wells,
)
from .orbits import (
    OrbitData,
    OrbitSamples,
    TurningPoints,
    action_and_period,
    action_of_imag_time,
    complex_period,
    integrate_orbit,
    momentum_branch,
    orbit_data,
    pole_positions,
    turning_points,
)
from .semiclassics import (
    Level,
    LevelLadder,
    RateTable,
    detailed_balance_ratio,
    fourier_matrix_element,
    quantize_well,
    transition_rates,
)
from .kinetics import (
    ActivationResult,
    DistributionProfile,
    activation_energy,
    area_formula_rprime,
    delta_activation,
    log_susceptibility,
    prebifurcation_activation,
    quasistationary_distribution,
    r_prime,
    r_prime_at_minimum,
    resonance_offsets,
    switching_rate_estimate,
)

__all__ = [
    "DEFAULT",
    "Settings",
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
    "TurningPoints",
    "OrbitData",
    "OrbitSamples",
    "turning_points",
    "momentum_branch",
    "action_and_period",
    "complex_period",
    "pole_positions",
    "orbit_data",
    "integrate_orbit",
    "action_of_imag_time",
    "Level",
    "LevelLadder",
    "RateTable",
    "quantize_well",
    "fourier_matrix_element",
    "transition_rates",
    "detailed_balance_ratio",
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
    "FliplineError",
    "SingleWellRegime",
    "OutsideWellRange",
    "CriticalPoint",
    "PoleProximity",
    "NoBoundStates",
    "LocalizationPoint",
    "NullSpaceDegenerate",
    "TruncationInsufficient",
    "ParseError",
    "ValidationError",
    "__version__",
]
