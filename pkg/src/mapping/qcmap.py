"""
Piecewise Map Module - Quasiconformal Automorphism f1
Evaluates the piecewise smooth map taking T(alpha, d) onto [-d, d] x [0, 1],
its mirror and central-symmetry extensions, and its inverse
"""
import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from ..geometry.shapes import (
    ArrayLike,
    Parallelogram,
    PlanePoint,
    Region,
    RegionTag,
    Side,
    Trapezoid,
    Window,
    classify_xy,
)
from ..utils.config import DEFAULT_MAP_CONFIG, MapConfig
from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MapEvaluation:
    """A single evaluation: input point, output point and the branch used."""
    input: PlanePoint
    output: PlanePoint
    region: Region


class SeamSample(NamedTuple):
    """A point on a shared boundary together with its two incident regions."""
    point: PlanePoint
    first: Region
    second: Region


def _region(code, left) -> Region:
    return Region(RegionTag(int(code)), Side.LEFT if bool(left) else Side.RIGHT)


def branch_xy(t: Trapezoid, codes: ArrayLike, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Right-half branch formulas selected per point by region code.

    Args:
        t: Trapezoid
        codes: RegionTag values (broadcast against x, y)
        x: Non-negative x-coordinates
        y: y-coordinates

    Returns:
        (u, v) images under the selected branches
    """
    codes, x, y = np.broadcast_arrays(np.asarray(codes), np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shift = t.d - t.c
    with np.errstate(divide='ignore', invalid='ignore'):
        u = np.select(
            [codes == RegionTag.G1, codes == RegionTag.G2, codes == RegionTag.G3, codes == RegionTag.G4],
            [x / (1.0 - t.ell * y), x + shift * y, x / (1.0 - t.ell), x + shift],
            default=x,
        )
    return u, y.copy()


def apply_branch(t: Trapezoid, region: Region, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluate the formula of one region, regardless of where the point lies.

    Left regions use the mirror extension f(z) = -conj(f(-conj(z))).
    """
    x = np.asarray(x, dtype=float)
    if region.side is Side.LEFT:
        u, v = branch_xy(t, int(region.tag), -x, y)
        return -u, v
    return branch_xy(t, int(region.tag), x, y)


def forward_xy(t: Trapezoid, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised forward map.

    Returns:
        (u, v, codes, left) where codes/left are the classifier output for (x, y)
    """
    codes, left = classify_xy(t, x, y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    u, v = branch_xy(t, codes, np.abs(x), y)
    return np.where(left, -u, u), v, codes, left


def classify_image_xy(t: Trapezoid, u: ArrayLike, v: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Classify points of the image plane into the image regions.

    Image regions for u >= 0 are [0, d] x [0, 1], the strip beyond u = d,
    the half-strip above [0, d], the quadrant beyond (d, 1) and the lower
    half-plane; ties resolve with the same precedence as classify_xy.
    """
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    au = np.abs(u)
    strip = (v >= 0.0) & (v <= 1.0)
    above = v > 1.0
    codes = np.select(
        [strip & (au <= t.d), strip, above & (au <= t.d), above],
        [RegionTag.G1, RegionTag.G2, RegionTag.G3, RegionTag.G4],
        default=RegionTag.G5,
    ).astype(np.int8)
    return codes, u < 0.0


def inverse_xy(t: Trapezoid, u: ArrayLike, v: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised inverse map, branch by branch on the image decomposition.

    Returns:
        (x, y, codes, left) where codes/left describe the image region of (u, v)
    """
    codes, left = classify_image_xy(t, u, v)
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    au = np.abs(u)
    shift = t.d - t.c
    x = np.select(
        [codes == RegionTag.G1, codes == RegionTag.G2, codes == RegionTag.G3, codes == RegionTag.G4],
        [au * (1.0 - t.ell * v), au - shift * v, au * (1.0 - t.ell), au - shift],
        default=au,
    )
    return np.where(left, -x, x), v.copy(), codes, left


def forward(t: Trapezoid, p: PlanePoint) -> MapEvaluation:
    """
    Evaluate f1 at a point.

    Args:
        t: Trapezoid
        p: Point of the plane

    Returns:
        MapEvaluation with the branch region of p
    """
    u, v, codes, left = forward_xy(t, p.x, p.y)
    return MapEvaluation(input=p, output=PlanePoint(float(u), float(v)), region=_region(codes, left))


def inverse(t: Trapezoid, w: PlanePoint) -> MapEvaluation:
    """
    Evaluate the inverse of f1 at a point of the image plane.

    The reported region is the image region containing w; up to rounding on
    seams it equals classify_region(t, output).
    """
    x, y, codes, left = inverse_xy(t, w.x, w.y)
    return MapEvaluation(input=w, output=PlanePoint(float(x), float(y)), region=_region(codes, left))


def branch_complex(t: Trapezoid, tag: RegionTag, z: complex) -> complex:
    """Right-half branch of f1 in its complex z, conj(z) form."""
    zbar = z.conjugate()
    ell = t.ell
    if tag is RegionTag.G1:
        return (4 * z + 1j * ell * (z - zbar) ** 2) / (4 + 2j * ell * (z - zbar))
    if tag is RegionTag.G2:
        return z - 1j * (t.d - t.c) / 2 * (z - zbar)
    if tag is RegionTag.G3:
        return ((2 - ell) * z + ell * zbar) / (2 * (1 - ell))
    if tag is RegionTag.G4:
        return z + (t.d - t.c)
    return z


def forward_complex(t: Trapezoid, z: complex) -> complex:
    """
    Evaluate f1 through the complex branch formulas.

    Serves as an independent cross-check of forward(), which uses the real form.
    """
    p = PlanePoint.from_complex(z)
    codes, left = classify_xy(t, p.x, p.y)
    tag = RegionTag(int(codes))
    if bool(left):
        return -branch_complex(t, tag, -z.conjugate()).conjugate()
    return branch_complex(t, tag, z)


def forward_parallelogram_xy(pg: Parallelogram, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised map of the parallelogram onto [-half_d, half_d] x [0, 1].

    The right half reuses the trapezoid formulas through the vertical flip
    y -> 1 - y; the left half follows from the central symmetry p -> i - p.

    Returns:
        (u, v, codes, left) with codes classified in the flipped trapezoid frame
    """
    t = pg.trapezoid
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    left = x < 0.0
    qx = np.abs(x)
    qy = np.where(left, 1.0 - y, y)
    fu, fv, codes, _ = forward_xy(t, qx, 1.0 - qy)
    ru, rv = fu, 1.0 - fv
    u = np.where(left, -ru, ru)
    v = np.where(left, 1.0 - rv, rv)
    return u, v, codes, left


def forward_parallelogram(pg: Parallelogram, p: PlanePoint) -> MapEvaluation:
    """
    Evaluate the central-symmetry extension for a parallelogram.

    Args:
        pg: Parallelogram
        p: Point of the plane

    Returns:
        MapEvaluation; region is the branch in the flipped trapezoid frame
    """
    u, v, codes, left = forward_parallelogram_xy(pg, p.x, p.y)
    return MapEvaluation(input=p, output=PlanePoint(float(u), float(v)), region=_region(codes, left))


def default_seam_window(t: Trapezoid, config: Optional[MapConfig] = None) -> Window:
    config = config or DEFAULT_MAP_CONFIG
    y_min, y_max = config.SEAM_Y_RANGE
    return Window(0.0, config.SEAM_X_FACTOR * t.d, y_min, y_max)


def default_view_window(t: Trapezoid, config: Optional[MapConfig] = None) -> Window:
    """[-3d, 3d] x [-2, 3]: both half-planes and all ten regions."""
    config = config or DEFAULT_MAP_CONFIG
    y_min, y_max = config.VIEW_Y_RANGE
    return Window(-config.VIEW_X_FACTOR * t.d, config.VIEW_X_FACTOR * t.d, y_min, y_max)


def _closed(a: float, b: float, n: int) -> np.ndarray:
    return np.linspace(a, b, n)


def _half_open(a: float, b: float, n: int) -> np.ndarray:
    # Excludes a: the corner belongs to a region outside this seam.
    return a + (b - a) * np.arange(1, n + 1) / n


def seam_samples(t: Trapezoid, n: int, window: Optional[Window] = None) -> List[SeamSample]:
    """
    Sample every shared boundary of the decomposition.

    Seams: the slanted side (G1/G2), y = 1 over [0, c] (G1/G3) and beyond c
    (G2/G4), x = c above y = 1 (G3/G4), y = 0 over [0, d] (G1/G5) and beyond
    d (G2/G5), and the imaginary axis (each region against its mirror).
    Unbounded seams are truncated at the window. Seams that start at a corner
    owned by a third region (the top corner (c, 1) and (d, 0)) exclude that
    corner, so with n = 2 they return the midpoint and the far end.

    Args:
        t: Trapezoid
        n: Points per seam, at least 2
        window: Truncation window, [0, 3d] x [-2, 3] by default

    Returns:
        List of SeamSample tuples

    Raises:
        DomainError: If n < 2 or the window does not reach beyond the trapezoid
    """
    if n < 2:
        raise DomainError(f"seam_samples needs n >= 2, got {n}")
    window = window or default_seam_window(t)
    if window.x_max <= t.d or window.y_min >= 0.0 or window.y_max <= 1.0:
        raise DomainError("seam window must contain the right half of the trapezoid in its interior")

    g1, g2, g3, g4, g5 = (Region(tag, Side.RIGHT) for tag in RegionTag)
    top_x = float(t.slant_x(1.0))
    slant_y = _closed(0.0, 1.0, n)
    seams = [
        (t.slant_x(slant_y), slant_y, g1, g2),
        (_closed(0.0, top_x, n), np.ones(n), g1, g3),
        (_half_open(top_x, window.x_max, n), np.ones(n), g2, g4),
        (np.full(n, t.c), _half_open(1.0, window.y_max, n), g3, g4),
        (_closed(0.0, t.d, n), np.zeros(n), g1, g5),
        (_half_open(t.d, window.x_max, n), np.zeros(n), g2, g5),
    ]

    samples: List[SeamSample] = []
    for xs, ys, first, second in seams:
        samples.extend(SeamSample(PlanePoint(float(x), float(y)), first, second) for x, y in zip(xs, ys))

    axis_y = _closed(window.y_min, window.y_max, n)
    codes, _ = classify_xy(t, np.zeros(n), axis_y)
    for y, code in zip(axis_y, codes):
        right = Region(RegionTag(int(code)), Side.RIGHT)
        samples.append(SeamSample(PlanePoint(0.0, float(y)), right, right.mirror))

    logger.debug(f"Generated {len(samples)} seam samples for {t}")
    return samples
