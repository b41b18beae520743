"""Exception hierarchy shared across the package.

Every error carries an ``exit_code`` used by the CLI: 1 usage, 2 data or
validation, 3 numeric degeneracy.
"""


class RbmVeError(Exception):
    exit_code = 2


class DimensionError(RbmVeError, ValueError):
    pass


class EmptyDataset(RbmVeError, ValueError):
    pass


class InvalidConfig(RbmVeError, ValueError):
    pass


class InvalidInput(RbmVeError, ValueError):
    pass


class InvalidSpec(RbmVeError, ValueError):
    pass


class ToleranceError(RbmVeError, ValueError):
    pass


class DegenerateTolerance(RbmVeError, ArithmeticError):
    exit_code = 3


class ParseError(RbmVeError, ValueError):
    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class RangeError(ParseError):
    pass


class IoError(RbmVeError, OSError):
    pass
