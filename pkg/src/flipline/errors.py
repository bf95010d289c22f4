"""Exception types shared across the package.

All conditions that a caller may want to catch structurally get their own
class.  Plain misuse (bad argument types, out-of-domain parameters that no
computation could give meaning to) raises ValueError as usual.
"""


class FliplineError(Exception):
    """Base class for all structured signals raised by this package."""


class SingleWellRegime(FliplineError):
    """The requested operation needs two wells but the cubic has one minimum."""


class OutsideWellRange(FliplineError):
    """Quasienergy outside the range supporting an intrawell orbit."""


class CriticalPoint(FliplineError):
    """Quasienergy too close to the critical value g_c; the interwell
    traversal time diverges logarithmically there."""


class PoleProximity(FliplineError):
    """A complex-time path passed too close to a pole of the orbit
    (|Q|, |P| blow-up detected)."""


class NoBoundStates(FliplineError):
    """The well is too shallow to hold a single quantized level."""


class LocalizationPoint(FliplineError):
    """g_c coincides with the well minimum (alpha_d = +/- mu); the
    closed-form slope at the bottom diverges and the quasistationary
    intrawell distribution is not defined by the rate ladder."""


class NullSpaceDegenerate(FliplineError):
    """The balance operator has a (numerically) multi-dimensional null
    space; no unique stationary distribution."""


class TruncationInsufficient(FliplineError):
    """Fock-space cutoff too small: analyzed eigenvectors leak into the
    last rows of the basis."""


class ParseError(FliplineError):
    """Config file is not syntactically valid JSON."""


class ValidationError(FliplineError):
    """Config parsed but violates the schema; message lists all violations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
