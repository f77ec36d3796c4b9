"""Exception types shared across the package.

Every failure mode that callers are expected to handle gets its own class;
all of them derive from :class:`QDiffError` so pipelines can catch the lot.
"""


class QDiffError(Exception):
    """Base class for all library errors."""


class ZeroSeries(QDiffError):
    """An operation required a nonzero series."""


class NonzeroConstantTerm(QDiffError):
    """q-summation needs a series whose constant term vanishes."""


class PrecisionExhausted(QDiffError):
    """Not enough tracked coefficients left to finish the computation."""


class ZeroDivisor(QDiffError):
    """Division by the zero operator."""


class ZeroOperator(QDiffError):
    """An operation required a nonzero operator."""


class SlopeMissing(QDiffError):
    """The requested slope does not occur in the Newton polygon."""


class ResonantExponent(QDiffError):
    """A resonance (vanishing divisor in a coefficient recurrence) was hit."""


class MultiplicityMismatch(QDiffError):
    """Exponent peeling stalled before the stated multiplicity was reached."""


class RootFindingFailure(QDiffError):
    """The companion-matrix eigenvalue computation did not converge."""


class NonconvergedSum(QDiffError):
    """An adaptive series summation hit its term cap before converging."""


class NearPole(QDiffError):
    """Evaluation point too close to a pole spiral."""


class TruncationDominates(QDiffError):
    """The truncated tail of a series is too large at the evaluation point."""


class InsufficientData(QDiffError):
    """Too few coefficients are known for a meaningful diagnostic."""


class ConvergentObstruction(QDiffError):
    """The equation has no convergent solution in general.

    When the first-order Borel test applies, ``obstruction`` carries the
    numeric obstruction values (all of them ~0 would mean solvable).
    """

    def __init__(self, message, obstruction=None):
        super().__init__(message)
        self.obstruction = obstruction


class DivisionNearZero(QDiffError):
    """A leading coefficient vanishes at a point needed for continuation."""


class UnstableWindow(QDiffError):
    """Two successive truncation windows disagree on kernel/cokernel ranks."""


class NotMonic(QDiffError):
    """The operator must be monic (top sigma-coefficient 1)."""


class SingularConstantTerm(QDiffError):
    """The constant sigma-coefficient must be a nonzero series."""


class SingularGauge(QDiffError):
    """The gauge matrix is not invertible as a series matrix."""


class SingularA0(QDiffError):
    """The constant matrix of the pure system must be invertible."""


class ExponentMismatch(QDiffError):
    """The expected exponent is not a root of the characteristic equation."""


class OperatorSyntaxError(QDiffError):
    """Operator expression could not be parsed; carries the position."""

    def __init__(self, message, line=1, col=0):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class UnknownSymbol(OperatorSyntaxError):
    """An identifier other than q, z, S or i appeared in an expression."""
