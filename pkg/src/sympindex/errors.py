"""Exception types shared across the package."""


class SympIndexError(Exception):
    pass


class PrecisionExhausted(SympIndexError, ArithmeticError):
    """A comparison against an irrational quantity is undecidable at the stored precision."""


class NotOnUnitCircle(SympIndexError, ValueError):
    pass


class NotSymplectic(SympIndexError, ValueError):
    pass


class NonGenericSpectrum(SympIndexError, ValueError):
    """The spectrum is too degenerate to classify from the matrix alone."""


class MeanIndexNonpositive(SympIndexError, ValueError):
    pass


class NoTupleFound(SympIndexError, LookupError):
    """The scan range was exhausted.

    Only existence up to the scanned bound is checked, so this is never a
    proof that no tuple exists.
    """

    def __init__(self, message, best_distance=None):
        super().__init__(message)
        self.best_distance = best_distance


class DomainBelowMin(SympIndexError, ValueError):
    pass


class DegenerateWithoutTable(SympIndexError, ValueError):
    pass


class PeriodUndetermined(SympIndexError, ValueError):
    pass
