"""Exception hierarchy shared by the pipeline stages.

The CLI maps each class onto an exit status, so raise the most specific one.
"""


class ClassSplomError(Exception):
    exit_code = 1


class ConfigError(ClassSplomError, ValueError):
    """Invalid run parameters (exit status 1)."""

    exit_code = 1


class DataError(ClassSplomError, ValueError):
    """Unreadable, malformed or invariant-violating input data (exit status 2)."""

    exit_code = 2


class DegenerateError(ClassSplomError, ArithmeticError):
    """A numerical problem has no well-defined answer (exit status 3)."""

    exit_code = 3
