"""Exception hierarchy shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class PainleveProbeError(Exception):
    """Base class for all errors raised by the package."""


# -- parsing -------------------------------------------------------------


@dataclass(frozen=True)
class ParseDiagnostic:
    byte_offset: int
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.severity} at byte {self.byte_offset}: {self.message}"


class ParseError(PainleveProbeError, ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class EquationSyntaxError(ParseError):
    """Malformed input text."""


class NonPolynomial(ParseError):
    """Division by a non-constant or a fractional/negative power."""


class NonMonicLeading(ParseError):
    """Highest derivative not linear with a nonzero constant coefficient."""


class MissingDerivative(ParseError):
    """No derivative of ``w`` occurs in the equation."""


# -- structural ------------------------------------------------------------


class LinearEquation(PainleveProbeError, ValueError):
    """No term of degree greater than one, so there is no Bureau number."""


class NoBasePoint(PainleveProbeError):
    pass


class ExcludedPoint(PainleveProbeError, ValueError):
    def __init__(self, chi, z0):
        super().__init__(f"coefficient of term {tuple(chi)} vanishes at z0={z0}")
        self.chi = tuple(chi)
        self.z0 = z0


# -- analysis --------------------------------------------------------------


class NumericFailure(PainleveProbeError, ArithmeticError):
    pass


class ZeroProduct(PainleveProbeError, ArithmeticError):
    """Resonance product requested at a multiple root of the determining polynomial."""


class CompatibilityFailure(PainleveProbeError):
    def __init__(self, index: int, residual):
        super().__init__(f"compatibility condition fails at resonance {index}: Q={residual}")
        self.index = index
        self.residual = residual


class DepthBeyondSupport(PainleveProbeError, ValueError):
    pass


class WindowTooNarrow(PainleveProbeError, ValueError):
    def __init__(self, required: int):
        super().__init__(f"series window too narrow; need at least {required} coefficients")
        self.required = required


class InterpolationInconsistent(PainleveProbeError, ArithmeticError):
    pass


class NotMonic(PainleveProbeError, ArithmeticError):
    pass


# -- combinatorics ---------------------------------------------------------


class InfeasibleSum(PainleveProbeError, ValueError):
    pass


class OutOfBounds(PainleveProbeError, ValueError):
    pass
