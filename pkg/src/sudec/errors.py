"""Exception types shared across the package.

Each class carries an ``exit_code`` used by the command line front end.
"""


class SudecError(Exception):
    exit_code = 1


class InvalidInput(SudecError, ValueError):
    exit_code = 2


class NonHermitianInput(InvalidInput):
    pass


class NotUnitary(InvalidInput):
    pass


class UnknownGroup(InvalidInput):
    pass


class UnknownKind(InvalidInput):
    pass


class EmptyCatalog(InvalidInput):
    pass


class DimensionMismatch(SudecError, ValueError):
    exit_code = 4


class OrderExceeded(SudecError):
    exit_code = 3


class BudgetExhausted(SudecError):
    exit_code = 3


class VerificationError(SudecError):
    exit_code = 1


class NoCenter(VerificationError):
    pass


class NonIntegerMultiplicity(VerificationError):
    pass


class NotSubgroup(VerificationError):
    pass


class NotNormal(VerificationError):
    pass


class NotGenerating(VerificationError):
    pass


class NonIdempotent(VerificationError):
    pass


class NoRefinement(VerificationError):
    pass


class DegenerateWindow(VerificationError):
    pass


class RankMismatch(SudecError):
    exit_code = 5
