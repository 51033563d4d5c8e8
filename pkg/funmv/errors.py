"""Exception hierarchy shared by the library and the CLI."""


class FunmvError(Exception):
    """Base class for every error raised by funmv"""

    exit_code = 1


class InputError(FunmvError, ValueError):
    """Bad arguments, shapes, options or input files"""

    exit_code = 2


class NumericalError(FunmvError, ArithmeticError):
    """Overflow or non-finite values during the computation"""

    exit_code = 3
