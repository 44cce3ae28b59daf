"""
qrtrap - Quasiconformal Reflection Bounds for Isosceles Trapezoids

Main package: the piecewise quasiconformal map of a trapezoid onto a
rectangle, its dilatation, complete elliptic integrals and the bounds built
from them.
"""

__version__ = "1.0.0"
__author__ = "qrtrap developers"

from src.geometry.shapes import (
    Parallelogram,
    PlanePoint,
    Region,
    RegionTag,
    Trapezoid,
    classify_region,
    make_parallelogram,
    make_trapezoid,
)
from src.mapping.qcmap import forward, forward_parallelogram, inverse
from src.mapping.dilatation import global_K, region_bound, wirtinger_analytic, wirtinger_fd
from src.special_functions.elliptic import ellip_K, find_lambda0, g_of
from src.estimates.bounds import (
    BoundsReport,
    bounds_report,
    compare_scan,
    lower_bound,
    upper_bound_new,
    upper_bound_parallelogram,
    upper_bound_tau,
)
from src.utils.exceptions import DomainError, QRError

__all__ = [
    'Trapezoid',
    'Parallelogram',
    'PlanePoint',
    'Region',
    'RegionTag',
    'make_trapezoid',
    'make_parallelogram',
    'classify_region',
    'forward',
    'inverse',
    'forward_parallelogram',
    'wirtinger_analytic',
    'wirtinger_fd',
    'region_bound',
    'global_K',
    'ellip_K',
    'g_of',
    'find_lambda0',
    'BoundsReport',
    'bounds_report',
    'lower_bound',
    'upper_bound_tau',
    'upper_bound_new',
    'upper_bound_parallelogram',
    'compare_scan',
    'QRError',
    'DomainError',
]
