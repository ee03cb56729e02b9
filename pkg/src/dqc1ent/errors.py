"""Exception types raised by the library.

Two families: ``UsageError`` for bad arguments (CLI exit code 2) and
``NumericValidationError`` for inputs or results that fail a numerical
check (CLI exit code 3).
"""


class UsageError(ValueError):
    pass


class NumericValidationError(ValueError):
    pass


class RegisterTooLarge(UsageError):
    def __init__(self, qubits, limit):
        super().__init__(f"register too large: {qubits} qubits exceeds limit of {limit}")
        self.qubits = qubits
        self.limit = limit


class NotHermitianError(NumericValidationError):
    pass


class InvalidSpectrumError(NumericValidationError):
    pass
