"""Exception hierarchy shared by all modules."""


class KrallM1Error(Exception):
    """Base class for all library errors."""


class DegreeUnderflow(KrallM1Error):
    """A Laurent polynomial operation would need a degree below the floor."""


class DegenerateParameters(KrallM1Error):
    """A formula denominator vanishes at the given parameters.

    The message names the vanishing factor.
    """


class GeronimusDegenerate(KrallM1Error):
    """The Geronimus transform does not exist at degree ``n``.

    Raised when the required ratio of second-kind values is undefined,
    i.e. the previous transform coefficient vanishes at these parameters.
    """

    def __init__(self, n, detail=""):
        self.n = n
        msg = f"Geronimus transform degenerate at degree {n}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class IncompleteTable(KrallM1Error):
    """An operator application needs representation entries the table lacks."""

    def __init__(self, missing):
        self.missing = list(missing)
        pairs = ", ".join(f"(n={n}, s={s})" for n, s in self.missing)
        super().__init__(f"representation table has no value for: {pairs}")


class InsufficientMoments(KrallM1Error):
    """An inner product needs moments beyond the stored range."""


class IntegrabilityError(KrallM1Error):
    """The continuous weight is not integrable at these parameters."""


class NotPositiveDefinite(KrallM1Error):
    """A square root of a recurrence coefficient would be imaginary.

    ``index`` is the first offending coefficient index.
    """

    def __init__(self, index, detail=""):
        self.index = index
        msg = f"recurrence coefficient u~_{index} is not positive"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NonPolynomialOutput(KrallM1Error):
    """The reflection operator left uncancelled negative-degree terms.

    This signals a transcription or implementation bug, never a property
    of valid input.
    """


class ResidualExceeded(KrallM1Error):
    """A floating-point identity check exceeded its tolerance."""

    def __init__(self, residual, tol, location=""):
        self.residual = residual
        self.tol = tol
        self.location = location
        msg = f"residual {residual} exceeds tolerance {tol}"
        if location:
            msg += f" at {location}"
        super().__init__(msg)
