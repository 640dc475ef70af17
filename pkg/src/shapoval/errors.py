"""Exception types.  `code` is the CLI exit status for the error class."""


class ShapovalError(Exception):
    code = 1


class HypothesisError(ShapovalError):
    """A theorem hypothesis fails for the given input (e.g. chi(beta, beta) = 1)."""

    code = 2


class CapExceededError(ShapovalError):
    """An enumeration cap was hit, so finiteness is undecided."""

    code = 3


class InputError(ShapovalError):
    code = 4


class ReflectionUndefined(ShapovalError, ValueError):
    """r_p(chi) requested for a chi that is not p-finite."""

    code = 2
