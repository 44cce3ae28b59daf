"""
Geometry Module - Trapezoid, Parallelogram and Region Decomposition
Parametrizes the unit-height isosceles trapezoid T(alpha, d), the parallelogram
Pi(alpha, a) and splits the plane into the five pieces of the piecewise map
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Tuple, Union

import numpy as np

from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class RegionTag(IntEnum):
    """Piece of the right half-plane decomposition"""
    G1 = 1
    G2 = 2
    G3 = 3
    G4 = 4
    G5 = 5


class Side(str, Enum):
    """Half-plane flag of a region"""
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class Region:
    """A region tag together with its half-plane."""
    tag: RegionTag
    side: Side = Side.RIGHT

    @property
    def mirror(self) -> "Region":
        return Region(self.tag, Side.LEFT if self.side is Side.RIGHT else Side.RIGHT)

    def __str__(self) -> str:
        return f"{self.tag.name}/{self.side.value}"


RIGHT_REGIONS = tuple(Region(tag, Side.RIGHT) for tag in RegionTag)
ALL_REGIONS = RIGHT_REGIONS + tuple(Region(tag, Side.LEFT) for tag in RegionTag)


def require_finite(**values: float) -> None:
    """
    Reject non-finite scalars.

    Raises:
        DomainError: If any value is NaN or infinite
    """
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def cot_pi(alpha: float) -> float:
    """cot(pi*alpha), exactly 0 at the rectangle limit alpha = 1/2."""
    if alpha == 0.5:
        return 0.0
    return 1.0 / math.tan(math.pi * alpha)


@dataclass(frozen=True)
class PlanePoint:
    """A point z = x + iy of the plane."""
    x: float
    y: float

    def __post_init__(self):
        require_finite(x=self.x, y=self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "PlanePoint":
        return cls(float(z.real), float(z.imag))

    def as_complex(self) -> complex:
        return complex(self.x, self.y)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Window:
    """
    Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].

    Raises:
        DomainError: If the window is empty or not finite
    """
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        require_finite(x_min=self.x_min, x_max=self.x_max, y_min=self.y_min, y_max=self.y_max)
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError(
                f"degenerate window [{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]"
            )

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min


@dataclass(frozen=True)
class Trapezoid:
    """
    Isosceles trapezoid T(alpha, d) of height 1.

    The bigger base [-d, d] lies on the real axis, the smaller base
    [-c, c] + i on the line y = 1, and the acute angles equal pi*alpha.
    Build instances with make_trapezoid() so the invariants
    c = d - cot(pi*alpha) and ell = (d - c)/d hold.
    """
    alpha: float
    d: float
    c: float
    ell: float

    @property
    def cot(self) -> float:
        return cot_pi(self.alpha)

    @property
    def is_rectangle(self) -> bool:
        return self.ell == 0.0

    @classmethod
    def from_smaller_base(cls, alpha: float, c: float) -> "Trapezoid":
        """Build T(alpha, d) from the smaller half-base, d = c + cot(pi*alpha)."""
        require_finite(alpha=alpha, c=c)
        if c <= 0:
            raise DomainError(f"c must be positive, got {c}")
        return make_trapezoid(alpha, c + cot_pi(alpha))

    def slant_x(self, y: ArrayLike) -> ArrayLike:
        """x-coordinate of the right lateral side at height y."""
        return self.d * (1.0 - self.ell * y)

    def vertices(self) -> Tuple[PlanePoint, ...]:
        """Vertices counter-clockwise from -d."""
        return (
            PlanePoint(-self.d, 0.0),
            PlanePoint(self.d, 0.0),
            PlanePoint(self.c, 1.0),
            PlanePoint(-self.c, 1.0),
        )

    def image_vertices(self) -> Tuple[PlanePoint, ...]:
        """Vertices of the image rectangle [-d, d] x [0, 1]."""
        return (
            PlanePoint(-self.d, 0.0),
            PlanePoint(self.d, 0.0),
            PlanePoint(self.d, 1.0),
            PlanePoint(-self.d, 1.0),
        )


def make_trapezoid(alpha: float, d: float) -> Trapezoid:
    """
    Build the trapezoid T(alpha, d).

    Args:
        alpha: Acute angle in units of pi, 0 < alpha <= 1/2
        d: Half-length of the bigger base

    Returns:
        Trapezoid with c = d - cot(pi*alpha) and ell = (d - c)/d

    Raises:
        DomainError: If alpha is out of range, d <= cot(pi*alpha) or an input is not finite
    """
    require_finite(alpha=alpha, d=d)
    if not 0.0 < alpha <= 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2], got {alpha}")
    cot = cot_pi(alpha)
    if d <= cot:
        raise DomainError(f"d must exceed cot(pi*alpha)={cot:.6g}, got d={d}")
    c = d - cot
    trapezoid = Trapezoid(alpha=alpha, d=d, c=c, ell=(d - c) / d)
    logger.debug(f"Built {trapezoid}")
    return trapezoid


@dataclass(frozen=True)
class Parallelogram:
    """
    Parallelogram Pi(alpha, a) of height 1, centrally symmetric about i/2.

    Horizontal sides have length a; the bottom side is [-half_d, half_c] and
    the top side [-half_c, half_d] + i, so the imaginary axis cuts it into two
    rectangular trapezoids whose bigger base lies on top.
    """
    alpha: float
    a: float
    half_c: float
    half_d: float

    @property
    def cot(self) -> float:
        return cot_pi(self.alpha)

    @property
    def trapezoid(self) -> Trapezoid:
        """T(alpha, half_d); its right half is the vertical flip of the right half of Pi."""
        return make_trapezoid(self.alpha, self.half_d)

    def vertices(self) -> Tuple[PlanePoint, ...]:
        return (
            PlanePoint(-self.half_d, 0.0),
            PlanePoint(self.half_c, 0.0),
            PlanePoint(self.half_d, 1.0),
            PlanePoint(-self.half_c, 1.0),
        )


def make_parallelogram(alpha: float, a: float) -> Parallelogram:
    """
    Build the parallelogram Pi(alpha, a).

    Args:
        alpha: Acute angle in units of pi, 0 < alpha < 1/2
        a: Length of the horizontal sides

    Returns:
        Parallelogram with half_c = (a - cot)/2 and half_d = (a + cot)/2

    Raises:
        DomainError: If alpha is out of range or a <= cot(pi*alpha)
    """
    require_finite(alpha=alpha, a=a)
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"alpha must lie in (0, 1/2), got {alpha}")
    cot = cot_pi(alpha)
    if a <= cot:
        raise DomainError(f"a must exceed cot(pi*alpha)={cot:.6g}, got a={a}")
    return Parallelogram(alpha=alpha, a=a, half_c=(a - cot) / 2.0, half_d=(a + cot) / 2.0)


def classify_xy(t: Trapezoid, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorised region classification.

    Ties on shared boundaries resolve by the precedence G1 > G2 > G3 > G4 > G5
    with G1 closed. Points with x < 0 are classified through (-x, y).

    Args:
        t: Trapezoid
        x: x-coordinates
        y: y-coordinates (broadcast against x)

    Returns:
        (codes, left): integer RegionTag values and a boolean left-half-plane mask
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ax = np.abs(x)
    strip = (y >= 0.0) & (y <= 1.0)
    above = y > 1.0
    codes = np.select(
        [strip & (ax <= t.slant_x(y)), strip, above & (ax <= t.c), above],
        [RegionTag.G1, RegionTag.G2, RegionTag.G3, RegionTag.G4],
        default=RegionTag.G5,
    ).astype(np.int8)
    return codes, x < 0.0


def classify_region(t: Trapezoid, p: PlanePoint) -> Region:
    """
    Classify a point into one of the ten regions.

    Args:
        t: Trapezoid
        p: Point of the plane

    Returns:
        Region tag with its half-plane flag
    """
    codes, left = classify_xy(t, p.x, p.y)
    return Region(RegionTag(int(codes)), Side.LEFT if bool(left) else Side.RIGHT)
