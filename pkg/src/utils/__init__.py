"""
Utilities module for qrtrap
Configuration classes and the error hierarchy
"""
from .config import configure_logging
from .exceptions import ConvergenceError, DegenerateJacobian, DomainError, QRError, StencilStraddlesSeam

__all__ = [
    'configure_logging',
    'QRError',
    'DomainError',
    'StencilStraddlesSeam',
    'DegenerateJacobian',
    'ConvergenceError',
]
