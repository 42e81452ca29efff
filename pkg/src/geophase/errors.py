"""Exception hierarchy.

Every failure mode raised by this package derives from :class:`GeophaseError`,
so callers (and the CLI) can catch one base class and map it to a diagnostic.
Class names double as stable error codes in CLI output.
"""


class GeophaseError(Exception):
    """Base class for all errors raised by geophase."""


# --- motion path construction / evaluation ---

class GapOrOverlap(GeophaseError):
    """Segment intervals do not tile [0, 1]."""


class DiscontinuousPath(GeophaseError):
    """Adjacent segments disagree at a breakpoint beyond tolerance."""


class BetaOutOfRange(GeophaseError):
    """A tilt value leaves [0, pi]."""


class ThetaNonzeroAtStart(GeophaseError):
    """The revolution angle does not start at 0."""


class OutOfDomain(GeophaseError):
    """Evaluation time outside [0, 1]."""


class UnknownExample(GeophaseError):
    """Gallery id is not one of i..vi."""


# --- regularized curve ---

class EpsilonOutOfRange(GeophaseError):
    """Clamp parameter outside (0, pi/8)."""


class AtCusp(GeophaseError):
    """Curvature requested at a sample where the tangent jumps."""


class CurveHasCusps(GeophaseError):
    """Offset-curve operation needs a smooth curve."""


# --- region analysis ---

class CurveNotClosed(GeophaseError):
    """Operation requires first and last curve points to coincide."""


class CurveNotSimple(GeophaseError):
    """Operation requires a non-self-intersecting curve."""


class PoleOnCurve(GeophaseError):
    """A pole lies on the sampled curve; parity classification undefined."""


class DegenerateArc(GeophaseError):
    """Classification arc stayed tangential after all perturbation retries."""


class WindingInconsistent(GeophaseError):
    """Azimuthal winding contradicts the pole-separation parity result."""


# --- quadrature / reconciliation ---

class QuadratureFailure(GeophaseError):
    """Adaptive integrator hit maximum depth above tolerance."""


class MethodDisagreement(GeophaseError):
    """Independent phase methods differ beyond 10x the reconciliation tolerance."""


# --- gauge channels ---

class GaugeInconsistency(GeophaseError):
    """The equivalent holonomy expressions disagree beyond tolerance."""


class OnSingularAxis(GeophaseError):
    """Point too close to the patch's excluded half-axis."""


class AtSingularPole(GeophaseError):
    """Eigenstate requested at the pole where its phase is undefined."""


# --- rolling oracle ---

class SingularSystem(GeophaseError):
    """Rate solve at a stationary instant (handled by returning zero rates)."""


class DriftExceeded(GeophaseError):
    """Orientation orthogonality drift above threshold."""


class ClosureMismatch(GeophaseError):
    """Final orientation fails the mod-2pi residual-rotation check."""


# --- navigation tracks ---

class EmptyTrack(GeophaseError):
    """Track has fewer than two samples."""


class NonMonotoneTime(GeophaseError):
    """Track times are not strictly increasing."""


class ParseError(GeophaseError):
    """Malformed track file; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class LatitudeOutOfRange(GeophaseError):
    """Latitude outside [-90, 90] degrees."""
