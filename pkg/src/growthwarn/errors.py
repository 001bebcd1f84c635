"""Exception types shared across the toolkit."""


class GrowthError(ValueError):
    """Base class for all toolkit errors."""


class SeriesError(GrowthError):
    """Problem with an input series. ``row`` is the 1-based file line, if known."""

    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class FitError(GrowthError):
    pass


class SingularityError(GrowthError):
    """Evaluation requested at or beyond a finite-time singularity."""

    def __init__(self, message, year=None):
        self.year = year
        super().__init__(message)


class DivergenceError(GrowthError):
    """A trajectory blew past the overflow guard."""

    def __init__(self, message, year=None):
        self.year = year
        super().__init__(message)
