"""Exception types shared across the package.

Every failure mode that callers are expected to handle has its own class;
anything else is a plain ValueError and means a bug on our side.
"""


class TropbitError(Exception):
    """Base class for all package errors."""


class ParseError(TropbitError):
    """Malformed series literal or curve file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class NonZeroValuation(TropbitError):
    """residue() called on a series whose valuation is not zero."""


class TruncatedToZero(TropbitError):
    """A coefficient needed here has no visible terms; the caller must
    redo the computation at higher truncation order."""


class DivisionByZero(TropbitError):
    """Division by a series with no visible terms (zero up to truncation)."""


class WrongDegree(TropbitError):
    """Polynomial degree does not match what the operation requires."""


class WrongPolygon(TropbitError):
    """Newton polygon is not the full triangle of the stated degree."""


class NonSmoothCurve(TropbitError):
    """Dual subdivision is not a unimodular triangulation."""


class ParallelDirections(TropbitError):
    """Stable intersection displacement is parallel to an edge, so the
    perturbed curves fail to be transversal.  The caller picks a new
    displacement and retries."""


class GenericityViolation(TropbitError):
    """One of the genericity clauses fails for this curve.

    clause is "i" (non-smooth), "ii" (equal initial lifts on one end),
    "iii" (forbidden residue in a vertex tangency) or "iv" (ambiguous
    star-shaped cancellation).
    """

    def __init__(self, clause, message):
        self.clause = clause
        super().__init__("clause (%s): %s" % (clause, message))


class NonGenericTie(TropbitError):
    """An order-by-order cancellation step has a vanishing linear term."""


class UnimplementedClosedForm(TropbitError):
    """Solution would need a field extension the closed forms do not cover."""


class SingularJacobian(TropbitError):
    """Residue Jacobian of a local system is singular; no unique lift."""


class UnsupportedMultiplicity(TropbitError):
    """Local intersection multiplicity outside the range the lifting
    machinery handles."""


class NonUnimodular(TropbitError):
    """Lattice triangle that was required to be unimodular is not."""


class UnknownTopology(TropbitError):
    """Patchworked curve topology has no entry in the real count table."""
