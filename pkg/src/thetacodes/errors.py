"""Exception hierarchy shared by the library and the command-line front end."""


class ThetaCodesError(Exception):
    """Base class for every error raised by this package."""


class InputError(ThetaCodesError, ValueError):
    """Malformed input: bad alphabet, non-bijective map, foreign letters, empty word in a code."""


class PreconditionError(ThetaCodesError, ValueError):
    """A construction was asked for on an input outside its domain.

    ``prop`` names the violated property and ``witness`` carries whatever
    evidence the failing check produced.
    """

    def __init__(self, message, prop=None, witness=None):
        super().__init__(message)
        self.prop = prop
        self.witness = witness


class BudgetExhausted(ThetaCodesError, RuntimeError):
    """A bounded search or closure loop ran out of steps."""


class ConstructionError(ThetaCodesError, AssertionError):
    """A guaranteed post-condition did not hold.

    Raising this always means a bug in the implementation, never bad input.
    """
