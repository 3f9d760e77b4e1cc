"""Exception types raised by itercalc."""

from __future__ import annotations


class ItercalcError(Exception):
    """Base class for all library errors."""


class ZeroDenominator(ItercalcError, ZeroDivisionError):
    """A fraction was built with a zero denominator."""


class DivisionByZero(ItercalcError, ZeroDivisionError):
    """Division of a rational function by zero."""


class DegenerateMatrix(ItercalcError, ValueError):
    """A Mobius matrix with vanishing determinant."""


class PoleAtEvaluationPoint(ItercalcError, ArithmeticError):
    """A rational function was evaluated at one of its poles."""


class UnsupportedLetter(ItercalcError, ValueError):
    """A letter outside the alphabet {0, 1, z} reached an operator defined only there."""


class EmptyWordInput(ItercalcError, ValueError):
    """An operation that needs a non-constant monomial received a constant."""


class InvalidF(ItercalcError, ValueError):
    """A map f handed to partial_with_f disagrees with the bracket where letters differ."""


class GammaMapsEndpointToInfinity(ItercalcError, ValueError):
    """The Mobius map sends the start or end point to infinity."""


class PoleOnPath(ItercalcError, ValueError):
    """A numeric letter lies on the open integration segment (0, 1)."""


class NotAdmissible(ItercalcError, ValueError):
    """The iterated integral of this word diverges (first letter 0 or last letter 1)."""


class ToleranceNotReached(ItercalcError, RuntimeError):
    """Quadrature exhausted its evaluation budget before meeting the tolerance."""


class ExpressionSyntaxError(ItercalcError, ValueError):
    """Malformed expression text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at offset {offset}")
