"""
Dilatation Module - Wirtinger Derivatives and Quasiconformality Estimates
Computes f_z and f_zbar of the piecewise map (closed form and central
differences), pointwise dilatation, per-region majorants and the global
coefficient K~ of the map
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from ..geometry.shapes import (
    ArrayLike,
    PlanePoint,
    Region,
    RegionTag,
    Side,
    Trapezoid,
    Window,
    classify_region,
    classify_xy,
)
from ..utils.config import DEFAULT_DILATATION_CONFIG, DilatationConfig
from ..utils.exceptions import DegenerateJacobian, DomainError, StencilStraddlesSeam
from .qcmap import forward_xy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WirtingerPair:
    """Complex partial derivatives (f_z, f_zbar) at a point."""
    fz: complex
    fzbar: complex

    @property
    def ratio(self) -> float:
        """|f_zbar / f_z|, the modulus of the Beltrami coefficient."""
        return abs(self.fzbar) / abs(self.fz)


@dataclass
class DilatationField:
    """
    Dilatation sampled on a grid.

    Attributes:
        samples: DataFrame with columns x, y, tag, side, dilatation
        max_per_region: Largest sampled dilatation per region
        argmax_per_region: Grid point attaining that maximum
        window: Sampled window
        resolution: Points per axis
    """
    samples: pd.DataFrame
    max_per_region: Dict[Region, float] = field(default_factory=dict)
    argmax_per_region: Dict[Region, PlanePoint] = field(default_factory=dict)
    window: Optional[Window] = None
    resolution: int = 0


def _right_wirtinger(t: Trapezoid, codes: np.ndarray, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    ell = t.ell
    shift = t.d - t.c
    with np.errstate(divide='ignore', invalid='ignore'):
        a = 1.0 - ell * y
        g1_fz = 0.5 * ((2.0 - ell * y) / a - 1j * ell * x / a ** 2)
        g1_fzbar = 0.5 * (ell * y / a + 1j * ell * x / a ** 2)
    conditions = [codes == RegionTag.G1, codes == RegionTag.G2, codes == RegionTag.G3]
    fz = np.select(
        conditions,
        [g1_fz, 0.5 * (2.0 - 1j * shift), 0.5 * (1.0 / (1.0 - ell) + 1.0)],
        default=1.0 + 0j,
    )
    fzbar = np.select(
        conditions,
        [g1_fzbar, 0.5j * shift, 0.5 * ell / (1.0 - ell) + 0j],
        default=0j,
    )
    return fz, fzbar


def wirtinger_field(t: Trapezoid, x: ArrayLike, y: ArrayLike) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised closed-form Wirtinger derivatives.

    The mirror extension conjugates both derivatives, evaluated at (-x, y).

    Returns:
        (fz, fzbar, codes, left)
    """
    codes, left = classify_xy(t, x, y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    fz, fzbar = _right_wirtinger(t, codes, np.abs(x), y)
    fz = np.where(left, np.conj(fz), fz)
    fzbar = np.where(left, np.conj(fzbar), fzbar)
    return fz, fzbar, codes, left


def wirtinger_analytic(t: Trapezoid, p: PlanePoint) -> WirtingerPair:
    """
    Closed-form Wirtinger derivatives of f1.

    On a seam the classifier's branch is used.

    Args:
        t: Trapezoid
        p: Point of the plane

    Returns:
        WirtingerPair
    """
    fz, fzbar, _, _ = wirtinger_field(t, p.x, p.y)
    return WirtingerPair(complex(fz), complex(fzbar))


def wirtinger_fd_field(t: Trapezoid, x: ArrayLike, y: ArrayLike, h: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised central-difference Wirtinger derivatives.

    Returns:
        (fz, fzbar, straddles) where straddles marks stencils leaving the region of their centre
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    centre_codes, centre_left = classify_xy(t, x, y)
    straddles = np.zeros(np.broadcast(x, y).shape, dtype=bool)
    values = []
    for dx, dy in ((h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)):
        u, v, codes, left = forward_xy(t, x + dx, y + dy)
        straddles |= (codes != centre_codes) | (left != centre_left)
        values.append(u + 1j * v)
    f_x = (values[0] - values[1]) / (2 * h)
    f_y = (values[2] - values[3]) / (2 * h)
    return 0.5 * (f_x - 1j * f_y), 0.5 * (f_x + 1j * f_y), straddles


def wirtinger_fd(t: Trapezoid, p: PlanePoint, h: Optional[float] = None) -> WirtingerPair:
    """
    Central-difference Wirtinger derivatives of f1.

    Args:
        t: Trapezoid
        p: Point of the plane
        h: Step of the stencil {p +- h, p +- ih}

    Returns:
        WirtingerPair agreeing with the closed form to O(h^2)

    Raises:
        DomainError: If h is not positive
        StencilStraddlesSeam: If the stencil leaves the region of p
    """
    h = DEFAULT_DILATATION_CONFIG.FD_STEP if h is None else h
    if not (math.isfinite(h) and h > 0):
        raise DomainError(f"finite-difference step must be positive, got {h}")
    fz, fzbar, straddles = wirtinger_fd_field(t, p.x, p.y, h)
    if bool(straddles):
        raise StencilStraddlesSeam(
            f"stencil of size {h} around ({p.x}, {p.y}) crosses a boundary of {classify_region(t, p)}"
        )
    return WirtingerPair(complex(fz), complex(fzbar))


def dilatation_values(fz: ArrayLike, fzbar: ArrayLike) -> np.ndarray:
    """
    Vectorised dilatation (|f_z| + |f_zbar|) / (|f_z| - |f_zbar|).

    Raises:
        DegenerateJacobian: If |f_z| <= |f_zbar| anywhere
    """
    a = np.abs(fz)
    b = np.abs(fzbar)
    if np.any(a <= b):
        raise DegenerateJacobian("|f_z| <= |f_zbar|: the map is not orientation preserving here")
    return (a + b) / (a - b)


def dilatation_at(pair: WirtingerPair) -> float:
    """
    Pointwise dilatation of a Wirtinger pair.

    Raises:
        DegenerateJacobian: If |f_z| <= |f_zbar|
    """
    return float(dilatation_values(pair.fz, pair.fzbar))


def ratio_g1(t: Trapezoid, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """|f_zbar / f_z| on G1 as a function of (x, y)."""
    ell = t.ell
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = 1.0 - ell * y
    lx2 = (ell * x) ** 2
    return np.sqrt(((ell * y) ** 2 * a ** 2 + lx2) / ((2.0 - ell * y) ** 2 * a ** 2 + lx2))


def ratio_on_slant(t: Trapezoid, y: ArrayLike) -> np.ndarray:
    """|f_zbar / f_z| on G1 maximised over x, i.e. on the slanted side x = d(1 - ell*y)."""
    ell = t.ell
    y = np.asarray(y, dtype=float)
    ld2 = (ell * t.d) ** 2
    return np.sqrt(((ell * y) ** 2 + ld2) / ((2.0 - ell * y) ** 2 + ld2))


def g2_g1_ratio_comparison(ell: float, d: float) -> Tuple[float, float]:
    """
    Both sides of the G2-versus-G1 ratio comparison.

    Returns:
        (G2 ratio (ell*d)/sqrt(4 + (ell*d)^2), G1 ratio bound), the first never exceeding the second
    """
    ld = ell * d
    return (
        ld / math.hypot(2.0, ld),
        ell * math.hypot(1.0, d) / math.hypot(2.0 - ell, ld),
    )


def region_ratio_bound(t: Trapezoid, r: Region) -> float:
    """Supremum of |f_zbar / f_z| over a region; mirrored regions share it."""
    if r.tag is RegionTag.G1:
        return g2_g1_ratio_comparison(t.ell, t.d)[1]
    if r.tag is RegionTag.G2:
        shift = t.d - t.c
        return shift / math.hypot(2.0, shift)
    if r.tag is RegionTag.G3:
        return t.ell / (2.0 - t.ell)
    return 0.0


def region_bound(t: Trapezoid, r: Region) -> float:
    """
    Majorant of the dilatation of f1 over a region.

    Args:
        t: Trapezoid
        r: Region; left regions share the bound of their mirror

    Returns:
        The region's dilatation majorant
    """
    ell, d = t.ell, t.d
    if r.tag is RegionTag.G1:
        return (math.hypot(2.0 - ell, ell * d) + ell * math.hypot(1.0, d)) ** 2 / (4.0 * (1.0 - ell))
    if r.tag is RegionTag.G2:
        shift = d - t.c
        return (shift + math.hypot(shift, 2.0)) ** 2 / 4.0
    if r.tag is RegionTag.G3:
        return 1.0 / (1.0 - ell)
    return 1.0


def global_K(t: Trapezoid) -> float:
    """Quasiconformality coefficient K~ of f1 on the whole plane (the G1 majorant)."""
    return region_bound(t, Region(RegionTag.G1))


def global_K_closed(t: Trapezoid) -> float:
    """K~ written through c, d and cot(pi*alpha)."""
    d, c, cot = t.d, t.c, t.cot
    radical = math.hypot(d + c, d * cot) + cot * math.hypot(1.0, d)
    return (radical / (2.0 * c)) * (radical / (2.0 * d))


def default_grid_window(t: Trapezoid) -> Window:
    """[0, d + 0.5] x [-0.25, 1.25]: all five right-half regions, dense near (c, 1)."""
    return Window(0.0, t.d + 0.5, -0.25, 1.25)


def grid_max(
    t: Trapezoid,
    resolution: Optional[int] = None,
    window: Optional[Window] = None,
    config: Optional[DilatationConfig] = None,
) -> DilatationField:
    """
    Brute-force maximisation of the dilatation on a grid.

    Grid points whose 5-point neighbourhood of radius
    SEAM_EXCLUSION_STEPS * FD_STEP leaves their region are skipped.

    Args:
        t: Trapezoid
        resolution: Points per axis, at least 8
        window: Sampled window (default_grid_window by default)
        config: DilatationConfig

    Returns:
        DilatationField with per-region maxima and their locations

    Raises:
        DomainError: If resolution < 8 or the window is degenerate
    """
    config = config or DEFAULT_DILATATION_CONFIG
    resolution = config.DEFAULT_RESOLUTION if resolution is None else resolution
    if resolution < 8:
        raise DomainError(f"grid resolution must be at least 8, got {resolution}")
    window = window or default_grid_window(t)

    xs, ys = np.meshgrid(
        np.linspace(window.x_min, window.x_max, resolution),
        np.linspace(window.y_min, window.y_max, resolution),
    )
    xs, ys = xs.ravel(), ys.ravel()
    codes, left = classify_xy(t, xs, ys)

    delta = config.SEAM_EXCLUSION_STEPS * config.FD_STEP
    keep = np.ones(xs.shape, dtype=bool)
    for dx, dy in ((delta, 0.0), (-delta, 0.0), (0.0, delta), (0.0, -delta)):
        near_codes, near_left = classify_xy(t, xs + dx, ys + dy)
        keep &= (near_codes == codes) & (near_left == left)
    xs, ys, codes, left = xs[keep], ys[keep], codes[keep], left[keep]

    fz, fzbar, _, _ = wirtinger_field(t, xs, ys)
    samples = pd.DataFrame({
        'x': xs,
        'y': ys,
        'tag': codes,
        'side': np.where(left, Side.LEFT.value, Side.RIGHT.value),
        'dilatation': dilatation_values(fz, fzbar),
    })

    result = DilatationField(samples=samples, window=window, resolution=resolution)
    for (tag, side), group in samples.groupby(['tag', 'side']):
        region = Region(RegionTag(int(tag)), Side(side))
        best = group['dilatation'].idxmax()
        result.max_per_region[region] = float(group.at[best, 'dilatation'])
        result.argmax_per_region[region] = PlanePoint(float(group.at[best, 'x']), float(group.at[best, 'y']))

    logger.info(
        f"Grid dilatation over {len(samples)} points ({resolution}x{resolution}, "
        f"{int((~keep).sum())} seam-adjacent skipped): "
        + ", ".join(f"{r}={v:.6g}" for r, v in sorted(result.max_per_region.items(), key=lambda kv: str(kv[0])))
    )
    return result
