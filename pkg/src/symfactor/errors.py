"""Exception hierarchy.

Every error class carries a distinct ``exit_code`` used by the command line
front end; see ``EXIT_CODES`` for the full table.
"""

from __future__ import annotations


class SymFactorError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParseError(SymFactorError, ValueError):
    exit_code = 3


class InvalidMatrix(SymFactorError, ValueError):
    """Non-finite entries or a malformed array."""

    exit_code = 4


class ShapeMismatch(SymFactorError, ValueError):
    exit_code = 5


class SingularMatrix(SymFactorError, ArithmeticError):
    exit_code = 6


class NotSymmetric(SymFactorError, ValueError):
    exit_code = 7


class ConvergenceFailure(SymFactorError, ArithmeticError):
    """An iteration did not converge; ``residual`` holds the last measure."""

    exit_code = 8

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class CapExceeded(SymFactorError, ValueError):
    exit_code = 9


class InvalidBlock(SymFactorError, ValueError):
    exit_code = 10


class NotJordanBlock(SymFactorError, ValueError):
    exit_code = 11


class InvalidSpec(SymFactorError, ValueError):
    exit_code = 12


class NotApplicable(SymFactorError, ValueError):
    exit_code = 13


class IllConditioned(SymFactorError, ArithmeticError):
    exit_code = 14


class NearDefective(SymFactorError, ArithmeticError):
    exit_code = 15


class NotRealSpectrum(SymFactorError, ValueError):
    exit_code = 16


class NotSPD(SymFactorError, ValueError):
    exit_code = 17


class InvalidSplit(SymFactorError, ValueError):
    exit_code = 18


class InvalidFactorization(SymFactorError, ValueError):
    exit_code = 19


class AmbiguousSpectrum(SymFactorError, ArithmeticError):
    exit_code = 20


class CertificateFailed(SymFactorError):
    """Raised by the CLI when a certificate has a failing applicable check."""

    exit_code = 21


class BoundViolation(SymFactorError, AssertionError):
    """An observed inertia falls outside the admissible bracket.

    This signals a bug in this package, never a counterexample to the theory.
    """

    exit_code = 22

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class OracleInconsistency(SymFactorError, AssertionError):
    exit_code = 23


class RefineFailure(SymFactorError, ArithmeticError):
    exit_code = 24

    def __init__(self, message: str, bracket: tuple[float, float] = (float("nan"), float("nan"))):
        super().__init__(message)
        self.bracket = bracket


class CountMismatch(SymFactorError, AssertionError):
    exit_code = 25

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class KernelMismatch(SymFactorError, AssertionError):
    exit_code = 26


class InternalError(SymFactorError, RuntimeError):
    exit_code = 27


def _collect() -> dict[str, int]:
    table = {"OK": 0, "SymFactorError": SymFactorError.exit_code, "UsageError": 2}
    for cls in SymFactorError.__subclasses__():
        table[cls.__name__] = cls.exit_code
    return table


EXIT_CODES = _collect()
