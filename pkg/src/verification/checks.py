"""
Verification Module - Numerical Checks of the Piecewise Map
Runs the continuity, derivative, dilatation, round-trip and sanity suites for
one trapezoid and collects per-check margins into a report
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..geometry.shapes import (
    ALL_REGIONS,
    Region,
    RegionTag,
    Side,
    Trapezoid,
    Window,
    classify_xy,
)
from ..mapping.dilatation import (
    global_K,
    grid_max,
    ratio_g1,
    ratio_on_slant,
    region_bound,
    wirtinger_fd_field,
    wirtinger_field,
)
from ..mapping.qcmap import (
    apply_branch,
    branch_complex,
    classify_image_xy,
    default_view_window,
    forward_xy,
    inverse_xy,
    seam_samples,
)
from ..utils.config import (
    DEFAULT_DILATATION_CONFIG,
    DEFAULT_MAP_CONFIG,
    DEFAULT_VERIFICATION_CONFIG,
    DilatationConfig,
    MapConfig,
    VerificationConfig,
)
from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """
    Outcome of one check.

    Attributes:
        name: Check identifier
        passed: Whether the check held
        value: Worst observed quantity
        tolerance: Threshold the value was compared against
        margin: Distance to failure, non-negative when the check passes
        detail: Extra numbers for the report
    """
    name: str
    passed: bool
    value: float
    tolerance: float
    margin: float
    detail: Dict = field(default_factory=dict)

    @classmethod
    def at_most(cls, name: str, value: float, tolerance: float, **detail) -> "CheckResult":
        return cls(name, bool(value <= tolerance), float(value), float(tolerance), float(tolerance - value), detail)

    @classmethod
    def at_least(cls, name: str, value: float, tolerance: float, **detail) -> "CheckResult":
        return cls(name, bool(value >= tolerance), float(value), float(tolerance), float(value - tolerance), detail)


@dataclass
class VerificationReport:
    """All check results for one trapezoid."""
    trapezoid: Trapezoid
    resolution: int
    tol: float
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> Dict:
        return {
            'trapezoid': asdict(self.trapezoid),
            'resolution': self.resolution,
            'tol': self.tol,
            'passed': self.passed,
            'checks': [asdict(check) for check in self.checks],
        }


def _region_box(t: Trapezoid, tag: RegionTag, window: Window) -> Tuple[float, float, float, float]:
    """Bounding box (x0, x1, y0, y1) of the right-half region inside the window."""
    boxes = {
        RegionTag.G1: (0.0, t.d, 0.0, 1.0),
        RegionTag.G2: (t.c, window.x_max, 0.0, 1.0),
        RegionTag.G3: (0.0, t.c, 1.0, window.y_max),
        RegionTag.G4: (t.c, window.x_max, 1.0, window.y_max),
        RegionTag.G5: (0.0, window.x_max, window.y_min, 0.0),
    }
    return boxes[tag]


class TrapezoidVerifier:
    """
    Numerical verification suite for the piecewise map of one trapezoid.

    Every check is deterministic: random samples come from a generator
    seeded with VerificationConfig.RANDOM_SEED.
    """

    def __init__(
        self,
        trapezoid: Trapezoid,
        resolution: Optional[int] = None,
        tol: Optional[float] = None,
        map_config: Optional[MapConfig] = None,
        dilatation_config: Optional[DilatationConfig] = None,
        config: Optional[VerificationConfig] = None,
    ):
        """
        Initialize the verifier.

        Args:
            trapezoid: Trapezoid under test
            resolution: Grid resolution of the dilatation maximisation
            tol: Tolerance of the exact-arithmetic checks (seams, round trip, complex form)
            map_config: MapConfig
            dilatation_config: DilatationConfig
            config: VerificationConfig with sample counts and seed

        Raises:
            DomainError: If tol is not positive or resolution < 8
        """
        self.t = trapezoid
        self.map_config = map_config or DEFAULT_MAP_CONFIG
        self.dilatation_config = dilatation_config or DEFAULT_DILATATION_CONFIG
        self.config = config or DEFAULT_VERIFICATION_CONFIG
        self.resolution = self.dilatation_config.DEFAULT_RESOLUTION if resolution is None else resolution
        self.tol = self.map_config.SEAM_TOL if tol is None else tol
        self.round_trip_tol = self.map_config.ROUND_TRIP_RTOL if tol is None else tol
        if not self.tol > 0:
            raise DomainError(f"tolerance must be positive, got {tol}")
        if self.resolution < 8:
            raise DomainError(f"grid resolution must be at least 8, got {self.resolution}")
        self.window = default_view_window(trapezoid, self.map_config)

    def _rng(self) -> np.random.Generator:
        return np.random.default_rng(self.config.RANDOM_SEED)

    def _uniform(self, rng: np.random.Generator, n: int) -> Tuple[np.ndarray, np.ndarray]:
        w = self.window
        return rng.uniform(w.x_min, w.x_max, n), rng.uniform(w.y_min, w.y_max, n)

    def sample_region(
        self,
        rng: np.random.Generator,
        region: Region,
        n: int,
        accept: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Draw n random points of a region by rejection from its bounding box.

        Args:
            rng: Random generator
            region: Target region
            n: Number of points
            accept: Extra acceptance mask on candidate (x, y)

        Returns:
            (x, y) arrays of length n
        """
        x0, x1, y0, y1 = _region_box(self.t, region.tag, self.window)
        sign = -1.0 if region.side is Side.LEFT else 1.0
        xs, ys = [], []
        found = 0
        for _ in range(100):
            x = sign * rng.uniform(x0, x1, 4 * n)
            y = rng.uniform(y0, y1, 4 * n)
            codes, left = classify_xy(self.t, x, y)
            mask = (codes == region.tag) & (left == (region.side is Side.LEFT))
            if accept is not None:
                mask &= accept(x, y)
            xs.append(x[mask])
            ys.append(y[mask])
            found += int(mask.sum())
            if found >= n:
                break
        else:
            raise DomainError(f"could not sample {n} interior points of {region}")
        return np.concatenate(xs)[:n], np.concatenate(ys)[:n]

    def check_seam_continuity(self) -> CheckResult:
        """Both incident branch formulas agree at every seam sample."""
        samples = seam_samples(self.t, self.config.SEAM_SAMPLES)
        worst = 0.0
        misclassified = 0
        for point, first, second in samples:
            u1, v1 = apply_branch(self.t, first, point.x, point.y)
            u2, v2 = apply_branch(self.t, second, point.x, point.y)
            worst = max(worst, float(abs(u1 - u2)), float(abs(v1 - v2)))
            codes, _ = classify_xy(self.t, point.x, point.y)
            if int(codes) not in (first.tag, second.tag):
                misclassified += 1
        result = CheckResult.at_most('seam_continuity', worst, self.tol, samples=len(samples))
        if misclassified:
            result.passed = False
            result.detail['misclassified'] = misclassified
        return result

    def check_derivatives(self) -> CheckResult:
        """Closed-form and central-difference Wirtinger derivatives agree on random interior points."""
        h = self.dilatation_config.FD_STEP
        n = self.config.FD_POINTS_PER_REGION
        rng = self._rng()

        def clear_stencil(x, y):
            return ~wirtinger_fd_field(self.t, x, y, h)[2]

        worst = 0.0
        per_region = {}
        for region in ALL_REGIONS:
            x, y = self.sample_region(rng, region, n, accept=clear_stencil)
            fz, fzbar, _, _ = wirtinger_field(self.t, x, y)
            fd_fz, fd_fzbar, _ = wirtinger_fd_field(self.t, x, y, h)
            scale = np.maximum(np.abs(fz), np.abs(fzbar))
            error = np.maximum(np.abs(fd_fz - fz), np.abs(fd_fzbar - fzbar)) / scale
            per_region[str(region)] = float(error.max())
            worst = max(worst, per_region[str(region)])
        return CheckResult.at_most(
            'analytic_vs_fd', worst, self.dilatation_config.FD_RTOL, h=h, points_per_region=n, per_region=per_region
        )

    def check_grid_max(self) -> List[CheckResult]:
        """Grid maxima stay below the region majorants; the G1 maximum approaches its majorant."""
        slack = self.dilatation_config.BOUND_SLACK
        field_ = grid_max(self.t, self.resolution, config=self.dilatation_config)
        excess = -np.inf
        per_region = {}
        for region, value in field_.max_per_region.items():
            bound = region_bound(self.t, region)
            per_region[str(region)] = {'max': value, 'bound': bound}
            excess = max(excess, value - bound)
        results = [CheckResult.at_most('grid_max_below_bound', excess, slack, per_region=per_region)]

        g1 = Region(RegionTag.G1, Side.RIGHT)
        if g1 in field_.max_per_region:
            bound = region_bound(self.t, g1)
            gap = (bound - field_.max_per_region[g1]) / bound
            argmax = field_.argmax_per_region[g1]
            results.append(CheckResult.at_most(
                'grid_max_g1_near_bound', gap, self.dilatation_config.CORNER_RTOL,
                bound=bound, argmax_x=argmax.x, argmax_y=argmax.y,
            ))
        return results

    def check_round_trip(self) -> List[CheckResult]:
        """inverse(forward(p)) = p and forward(inverse(w)) = w relative to max(1, |p|)."""
        rng = self._rng()
        n = self.config.ROUND_TRIP_POINTS
        results = []

        x, y = self._uniform(rng, n)
        u, v, _, _ = forward_xy(self.t, x, y)
        bx, by, _, _ = inverse_xy(self.t, u, v)
        error = np.hypot(bx - x, by - y) / np.maximum(1.0, np.hypot(x, y))
        results.append(CheckResult.at_most('round_trip_inverse_forward', float(error.max()), self.round_trip_tol, points=n))

        u, v = self._uniform(rng, n)
        x, y, _, _ = inverse_xy(self.t, u, v)
        bu, bv, _, _ = forward_xy(self.t, x, y)
        error = np.hypot(bu - u, bv - v) / np.maximum(1.0, np.hypot(u, v))
        results.append(CheckResult.at_most('round_trip_forward_inverse', float(error.max()), self.round_trip_tol, points=n))
        return results

    def check_complex_form(self) -> CheckResult:
        """The complex G1 formula agrees with x/(1 - ell*y) + iy."""
        rng = self._rng()
        x, y = self.sample_region(rng, Region(RegionTag.G1, Side.RIGHT), self.config.FD_POINTS_PER_REGION)
        w = branch_complex(self.t, RegionTag.G1, x + 1j * y)
        expected = x / (1.0 - self.t.ell * y) + 1j * y
        error = np.abs(w - expected) / np.maximum(1.0, np.abs(expected))
        return CheckResult.at_most('complex_real_g1', float(error.max()), self.tol, points=len(x))

    def check_monotonicity(self) -> CheckResult:
        """The G1 ratio grows in x at fixed y, and its x-maximum grows in y."""
        n = self.config.MONOTONICITY_POINTS
        worst = 0.0
        for y in np.linspace(0.0, 1.0, 11):
            x = np.linspace(0.0, float(self.t.slant_x(y)), n)
            worst = max(worst, float(-np.diff(ratio_g1(self.t, x, y)).min()))
        worst = max(worst, float(-np.diff(ratio_on_slant(self.t, np.linspace(0.0, 1.0, n))).min()))
        return CheckResult.at_most(
            'ratio_monotonicity', max(worst, 0.0), self.dilatation_config.MONOTONICITY_SLACK, points=n
        )

    def check_boundary_mapping(self) -> CheckResult:
        """Edges and vertices of T land on the boundary of [-d, d] x [0, 1]."""
        t = self.t
        n = self.config.MONOTONICITY_POINTS
        s = np.linspace(0.0, 1.0, n)
        deviations = []

        bx = np.linspace(-t.d, t.d, n)
        u, v, _, _ = forward_xy(t, bx, np.zeros(n))
        deviations.append(np.abs(u - bx) + np.abs(v))

        tx = np.linspace(-t.c, t.c, n)
        u, v, _, _ = forward_xy(t, tx, np.ones(n))
        deviations.append(np.abs(v - 1.0) + np.maximum(np.abs(u) - t.d, 0.0))

        for sign in (1.0, -1.0):
            u, v, _, _ = forward_xy(t, sign * t.slant_x(s), s)
            deviations.append(np.abs(np.abs(u) - t.d) + np.abs(v - s))

        for vertex, image in zip(t.vertices(), t.image_vertices()):
            u, v, _, _ = forward_xy(t, vertex.x, vertex.y)
            deviations.append(np.atleast_1d(abs(float(u) - image.x) + abs(float(v) - image.y)))

        worst = float(np.concatenate(deviations).max()) / max(1.0, t.d)
        return CheckResult.at_most('boundary_mapping', worst, self.tol, points_per_edge=n)

    def check_image_regions(self) -> CheckResult:
        """forward(G_k) lies in the image region of the same index."""
        rng = self._rng()
        n = self.config.ROUND_TRIP_POINTS
        x, y = self._uniform(rng, n)
        u, v, codes, left = forward_xy(self.t, x, y)
        image_codes, image_left = classify_image_xy(self.t, u, v)
        mismatched = int(((image_codes != codes) | (image_left != left)).sum())
        return CheckResult.at_most('image_region_consistency', float(mismatched), 0.0, points=n)

    def check_injectivity(self) -> CheckResult:
        """Distinct grid points keep images at least (input spacing)/(2 K~) apart."""
        n = self.config.INJECTIVITY_GRID
        w = self.window
        xs, ys = np.meshgrid(np.linspace(w.x_min, w.x_max, n), np.linspace(w.y_min, w.y_max, n))
        u, v, _, _ = forward_xy(self.t, xs.ravel(), ys.ravel())
        images = np.column_stack([u, v])
        distances, _ = cKDTree(images).query(images, k=2)
        spacing = min(w.width, w.height) / (n - 1)
        threshold = spacing / (2.0 * global_K(self.t))
        return CheckResult.at_least('injectivity', float(distances[:, 1].min()), threshold, grid=n)

    def run(self) -> VerificationReport:
        """
        Run every check.

        Returns:
            VerificationReport; report.passed is False if any check failed
        """
        report = VerificationReport(trapezoid=self.t, resolution=self.resolution, tol=self.tol)
        report.checks.append(self.check_seam_continuity())
        report.checks.append(self.check_derivatives())
        report.checks.extend(self.check_grid_max())
        report.checks.extend(self.check_round_trip())
        report.checks.append(self.check_complex_form())
        report.checks.append(self.check_monotonicity())
        report.checks.append(self.check_boundary_mapping())
        report.checks.append(self.check_image_regions())
        report.checks.append(self.check_injectivity())

        for check in report.checks:
            if check.passed:
                logger.debug(f"{check.name}: value={check.value:.3e} tolerance={check.tolerance:.3e}")
            else:
                logger.warning(f"{check.name} FAILED: value={check.value:.3e} tolerance={check.tolerance:.3e}")
        logger.info(
            f"Verification of {self.t}: {len(report.checks) - len(report.failed)}/{len(report.checks)} checks passed"
        )
        return report


def run_verification(
    t: Trapezoid,
    resolution: Optional[int] = None,
    tol: Optional[float] = None,
) -> VerificationReport:
    """Run the full suite with the default configuration."""
    return TrapezoidVerifier(t, resolution=resolution, tol=tol).run()
