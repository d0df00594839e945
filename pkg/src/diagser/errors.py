"""Exception hierarchy.

Every precondition failure raises a dedicated class so callers (and the CLI)
can name the violated precondition without parsing messages.
"""


class DiagserError(Exception):
    """Base class for all library errors."""


class VariableMismatch(DiagserError):
    """Two series with different principal variables were combined."""


class ZeroSeries(DiagserError):
    """Valuation (or similar) requested of a series that vanishes within truncation."""


class OutOfTruncation(DiagserError):
    """A coefficient outside the stored exact window was requested (unknown, not zero)."""


class BadConstantTerm(DiagserError):
    """exp needs constant term 0; log needs constant term 1 (up to a graded tail)."""


class NonUnitConstantTerm(DiagserError):
    """Multiplicative inversion needs a unit (or graded-unit) constant term."""


class NonzeroConstantInner(DiagserError):
    """Composition g must satisfy [x^0] g = 0."""


class NonUnitPhiConstant(DiagserError):
    """Lagrange solve needs phi(0) to be a unit."""


class NotInvertible(DiagserError):
    """Compositional inverse precondition failed (message names which one)."""


class NonpositiveValuation(DiagserError):
    """Residue composition needs val(r) > 0."""


class NotLegendrable(DiagserError):
    """Legendre transform precondition failed (message names which one)."""


class NoConvergenceAtDegree(DiagserError):
    """A fixed-point iteration failed to stabilize at some degree."""


class GradingNotLocallyFinite(DiagserError):
    """A graded expansion cannot be bounded by the active filter."""


class MissingHbarGrading(DiagserError):
    """Operation requires a series regraded with loop-counting exponents."""


class ExceptionalElement(DiagserError):
    """Gaussian pair with p*q = 1: not a series; resolve under a further Gaussian."""


class UnitRequired(DiagserError):
    """Argument must be a unit coefficient."""


class QuadraticNotUnit(DiagserError):
    """Algebraic Fourier transform needs 2*[x^2] f to be a unit."""


class NonUnitEdge(DiagserError):
    """Combinatorial Fourier transform needs a unit edge coefficient."""


class FilterTooLoose(DiagserError):
    """The truncation filter cannot make the requested expansion terminate."""


class Lambda2NotAllowed(DiagserError):
    """Closed forms restricted to vertex degrees >= 3 reject a degree-2 channel."""


class TooLarge(DiagserError):
    """Enumeration request exceeds the tractability bound."""
