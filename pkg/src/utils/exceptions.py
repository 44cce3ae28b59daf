"""
Exception Hierarchy - Error types raised by the qrtrap library
"""


class QRError(Exception):
    """Base class for every error raised by qrtrap."""


class DomainError(QRError, ValueError):
    """Parameters outside the admissible range, or non-finite input."""


class StencilStraddlesSeam(QRError, ValueError):
    """A finite-difference stencil crosses a region boundary."""


class DegenerateJacobian(QRError, ArithmeticError):
    """The Wirtinger pair satisfies |f_z| <= |f_zbar|."""


class ConvergenceError(QRError, RuntimeError):
    """A bracketing root finder was handed an interval without a sign change."""
