"""Exception hierarchy shared across the package.

Each class maps to one process exit code in the CLI:
InputError 2, ConvergenceError 3, NumericalError 4, ArgumentError 5.
"""


class LocpprError(Exception):
    exit_code = 1


class InputError(LocpprError):
    """Unreadable, unparsable, or empty input data."""
    exit_code = 2


class ParseError(InputError):
    pass


class EmptyInputError(InputError):
    pass


class DegenerateGraphError(InputError):
    """Preprocessing left fewer than two nodes."""
    pass


class ConvergenceError(LocpprError):
    """An iterative method hit its iteration cap before certifying."""
    exit_code = 3


class NumericalError(LocpprError):
    """Non-finite values encountered mid-solve."""
    exit_code = 4


class ArgumentError(LocpprError):
    """Arguments outside a method's domain of definition."""
    exit_code = 5
