"""Exception and warning types shared across the package."""


class InputError(ValueError):
    """Caller supplied an out-of-range or ill-formed argument."""


class ContractError(ValueError):
    """An operation was applied outside its precondition (wrong degree, wrong shape)."""


class UnsupportedSymbolError(ContractError):
    """A symbol has no rule in the table it is being pushed through."""


class ComputationError(ArithmeticError):
    """Input was well-formed but led to an inconsistent result."""


class PartialClassWarning(UserWarning):
    """A class known only modulo higher boundary met a curve that sees that boundary."""
