"""
Bounds Module - Estimates of the Quasiconformal Reflection Coefficient
Lower and upper bounds for QR_L of trapezoids and parallelograms, the
rectangle bounds, the inscribed-circle value and majorant comparison scans

All evaluators use the printed sum forms; none of them subtracts nearly equal
radicals, so do not rewrite them into difference forms.
"""
import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..geometry.shapes import Parallelogram, Trapezoid, cot_pi, require_finite
from ..mapping.dilatation import global_K
from ..special_functions.elliptic import C_of_alpha, find_lambda0, g_of
from ..utils.config import DEFAULT_SCAN_CONFIG
from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ['c', 'd', 'lower', 'upper_tau', 'upper_new']


class LowerBranch(str, Enum):
    """Which case of the lower bound applies"""
    AT_LAMBDA0 = "c/d>=lambda0"
    AT_RATIO = "c/d<lambda0"


@dataclass(frozen=True)
class BoundsReport:
    """
    Every bound for one trapezoid.

    Attributes:
        trapezoid: The trapezoid
        lower: Lower bound g(.)(1 + C(alpha)) d
        upper_tau: Upper bound (sqrt(1 + tau^2) + tau)^2
        upper_new: Upper bound K~^2 * 2 pi d
        K_tilde: Quasiconformality coefficient of the piecewise map
        tau: Auxiliary quantity of upper_tau
        branch: Case of the lower bound
    """
    trapezoid: Trapezoid
    lower: float
    upper_tau: float
    upper_new: float
    K_tilde: float
    tau: float
    branch: LowerBranch

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['branch'] = self.branch.value
        return data


@dataclass(frozen=True)
class ParallelogramReport:
    """Upper bound for a parallelogram and the trapezoid it reduces to."""
    parallelogram: Parallelogram
    upper: float
    upper_via_trapezoid: float

    def to_dict(self) -> Dict:
        return asdict(self)


def lower_bound(t: Trapezoid) -> Tuple[float, LowerBranch]:
    """
    Lower bound for QR_L.

    Args:
        t: Trapezoid

    Returns:
        (value, branch): g(lambda_0)(1 + C) d if c/d >= lambda_0, else g(c/d)(1 + C) d
    """
    lambda0 = find_lambda0()
    ratio = t.c / t.d
    if ratio >= lambda0:
        lam, branch = lambda0, LowerBranch.AT_LAMBDA0
    else:
        lam, branch = ratio, LowerBranch.AT_RATIO
    return g_of(lam) * (1.0 + C_of_alpha(t.alpha)) * t.d, branch


def upper_bound_tau(t: Trapezoid) -> Tuple[float, float]:
    """
    Quadratic-growth upper bound for QR_L.

    Returns:
        (value, tau) with tau = max{c + d, (1 - c^2 + d^2) / (2c)}
    """
    c, d = t.c, t.d
    tau = max(c + d, (1.0 + (d - c) * (d + c)) / (2.0 * c))
    root = math.hypot(1.0, tau) + tau
    return root * root, tau


def _upper_bound_cd(c: float, d: float) -> float:
    radical = math.hypot(d + c, d * (d - c)) + (d - c) * math.hypot(1.0, d)
    q = radical / c
    # pi radical^4 / (8 c^2 d)
    return math.pi / 8.0 * q * q * (radical / d) * radical


def upper_bound_new(t: Trapezoid) -> float:
    """
    Linear-growth upper bound for QR_L.

    Equals K~^2 * 2 pi d: the piecewise map, the rectangle reflection with
    coefficient 2 pi d and the inverse map compose into a reflection.
    """
    return _upper_bound_cd(t.c, t.d)


def composition_bound(t: Trapezoid) -> float:
    """K~^2 * 2 pi d evaluated from the dilatation majorant."""
    return global_K(t) ** 2 * 2.0 * math.pi * t.d


def asymptotic_slope(alpha: float) -> float:
    """
    C1(alpha) = (pi/8)(sqrt(4 + cot^2(pi alpha)) + cot(pi alpha))^4, the slope of upper_new in d.

    Raises:
        DomainError: If alpha is outside (0, 1/2]
    """
    require_finite(alpha=alpha)
    if not 0.0 < alpha <= 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2], got {alpha}")
    cot = cot_pi(alpha)
    root = math.hypot(2.0, cot) + cot
    square = root * root
    return math.pi / 8.0 * square * square


def upper_bound_parallelogram(pg: Parallelogram) -> float:
    """
    Upper bound for QR_L of the parallelogram boundary.

    Coincides with upper_bound_new at (half_c, half_d), since
    a = half_c + half_d and cot(pi alpha) = half_d - half_c.
    """
    a, cot = pg.a, pg.cot
    radical = math.hypot(2.0 * a, (a + cot) * cot) + cot * math.hypot(2.0, a + cot)
    q = radical / (a - cot)
    return math.pi / 16.0 * q * q * (radical / (a + cot)) * radical


def werner_bounds(m: float) -> Tuple[float, float]:
    """
    Bounds pi m / 3 < QR < pi m for the rectangle [0, m] x [0, 1].

    Raises:
        DomainError: If m < 1
    """
    require_finite(m=m)
    if m < 1.0:
        raise DomainError(f"rectangle side ratio m must be >= 1, got {m}")
    return math.pi * m / 3.0, math.pi * m


def kuhnau_inscribed(alpha_min: float) -> float:
    """
    QR_L = 2/alpha - 1 for a polygon with an inscribed circle and minimal angle pi*alpha.

    Raises:
        DomainError: If alpha_min is outside (0, 1)
    """
    require_finite(alpha_min=alpha_min)
    if not 0.0 < alpha_min < 1.0:
        raise DomainError(f"alpha_min must lie in (0, 1), got {alpha_min}")
    return 2.0 / alpha_min - 1.0


def bounds_report(t: Trapezoid) -> BoundsReport:
    """Evaluate every trapezoid bound at once."""
    lower, branch = lower_bound(t)
    upper_tau, tau = upper_bound_tau(t)
    return BoundsReport(
        trapezoid=t,
        lower=lower,
        upper_tau=upper_tau,
        upper_new=upper_bound_new(t),
        K_tilde=global_K(t),
        tau=tau,
        branch=branch,
    )


def parallelogram_report(pg: Parallelogram) -> ParallelogramReport:
    return ParallelogramReport(
        parallelogram=pg,
        upper=upper_bound_parallelogram(pg),
        upper_via_trapezoid=_upper_bound_cd(pg.half_c, pg.half_d),
    )


def compare_scan(
    alpha: float,
    c_min: Optional[float] = None,
    c_max: Optional[float] = None,
    n: Optional[int] = None,
    log_spacing: bool = False,
) -> pd.DataFrame:
    """
    Tabulate the bounds along a family of trapezoids with fixed angle.

    The family is parametrised by the smaller half-base c, whose admissible
    range is all of (0, inf); d = c + cot(pi alpha).

    Args:
        alpha: Acute angle in units of pi
        c_min: Smallest c, > 0
        c_max: Largest c, > c_min
        n: Number of rows, >= 2
        log_spacing: Space c geometrically instead of uniformly

    Returns:
        DataFrame with columns c, d, lower, upper_tau, upper_new in index order

    Raises:
        DomainError: On an invalid range or angle
    """
    c_min = DEFAULT_SCAN_CONFIG.C_MIN if c_min is None else c_min
    c_max = DEFAULT_SCAN_CONFIG.C_MAX if c_max is None else c_max
    n = DEFAULT_SCAN_CONFIG.N if n is None else n
    require_finite(alpha=alpha, c_min=c_min, c_max=c_max)
    if not 0.0 < c_min < c_max:
        raise DomainError(f"scan needs 0 < c_min < c_max, got [{c_min}, {c_max}]")
    if n < 2:
        raise DomainError(f"scan needs n >= 2, got {n}")

    cs = np.geomspace(c_min, c_max, n) if log_spacing else np.linspace(c_min, c_max, n)
    rows = []
    for c in cs:
        t = Trapezoid.from_smaller_base(alpha, float(c))
        lower, _ = lower_bound(t)
        upper_tau, _ = upper_bound_tau(t)
        rows.append((t.c, t.d, lower, upper_tau, upper_bound_new(t)))

    table = pd.DataFrame(rows, columns=SCAN_COLUMNS)
    logger.info(f"Scanned {n} trapezoids at alpha={alpha} over c in [{c_min}, {c_max}]")
    return table
