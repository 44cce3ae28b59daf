"""
Configuration Module - Centralized Settings
Contains configuration classes for map evaluation, dilatation analysis,
elliptic integrals, bound scans, output rendering and logging
"""
import logging
import os
from dataclasses import dataclass
from typing import Optional, Tuple

from dotenv import load_dotenv

load_dotenv()


@dataclass
class MapConfig:
    """
    Configuration for evaluating the piecewise map.

    Attributes:
        SEAM_X_FACTOR: Unbounded seams are truncated at x = SEAM_X_FACTOR * d
        SEAM_Y_RANGE: Vertical extent of the seam window
        SEAM_TOL: Allowed branch disagreement on a seam (per coordinate)
        ROUND_TRIP_RTOL: Relative tolerance for forward/inverse round trips
        VIEW_X_FACTOR: Visualization window spans [-VIEW_X_FACTOR*d, VIEW_X_FACTOR*d]
        VIEW_Y_RANGE: Vertical extent of the visualization window
    """
    SEAM_X_FACTOR: float = 3.0
    SEAM_Y_RANGE: Tuple[float, float] = (-2.0, 3.0)
    SEAM_TOL: float = 1e-12
    ROUND_TRIP_RTOL: float = 1e-12
    VIEW_X_FACTOR: float = 3.0
    VIEW_Y_RANGE: Tuple[float, float] = (-2.0, 3.0)


@dataclass
class DilatationConfig:
    """
    Configuration for derivative and dilatation estimates.

    Attributes:
        FD_STEP: Step h of the central-difference stencil
        FD_RTOL: Accepted relative error between analytic and FD derivatives
        SEAM_EXCLUSION_STEPS: Grid points within this many FD steps of a seam are skipped
        BOUND_SLACK: Slack added to region bounds when comparing grid maxima
        DEFAULT_RESOLUTION: Points per axis of the brute-force grid
        MONOTONICITY_SLACK: Allowed decrease in the monotone ratio sweeps
        CORNER_RTOL: Accepted relative gap between the G1 grid max and its bound
    """
    FD_STEP: float = 1e-5
    FD_RTOL: float = 1e-6
    SEAM_EXCLUSION_STEPS: int = 2
    BOUND_SLACK: float = 1e-9
    DEFAULT_RESOLUTION: int = 512
    MONOTONICITY_SLACK: float = 1e-12
    CORNER_RTOL: float = 0.01


@dataclass
class EllipticConfig:
    """
    Configuration for the complete elliptic integral and the lambda_0 root.

    Attributes:
        AGM_RTOL: Stop the AGM iteration once successive means agree to this relative size
        AGM_MAX_ITER: Hard cap on AGM iterations
        LAMBDA0_BRACKET: Bracket handed to the root finder
        LAMBDA0_XTOL: Absolute tolerance on the root
    """
    AGM_RTOL: float = 1e-16
    AGM_MAX_ITER: int = 40
    LAMBDA0_BRACKET: Tuple[float, float] = (0.1, 0.99)
    LAMBDA0_XTOL: float = 1e-12


@dataclass
class ScanConfig:
    """
    Configuration for majorant comparison scans over the smaller base c.

    Attributes:
        C_MIN: Lower end of the scan
        C_MAX: Upper end of the scan
        N: Number of rows
        LOG_SPACING: Use geometric instead of uniform spacing
    """
    C_MIN: float = 0.1
    C_MAX: float = 10.0
    N: int = 200
    LOG_SPACING: bool = False


@dataclass
class OutputConfig:
    """
    Configuration for rendered output.

    Attributes:
        CSV_FLOAT_FORMAT: printf-style format giving full round-trip precision
        SCHEMA_VERSION: Version tag written into every JSON report
        SVG_SCALE: Screen units per unit of the mathematical plane
        SVG_SAMPLES_PER_SEGMENT: Points per rendered grid segment
        SVG_GRID_DENSITY: Grid lines per axis
    """
    CSV_FLOAT_FORMAT: str = "%.17g"
    SCHEMA_VERSION: str = "1.0"
    SVG_SCALE: float = 100.0
    SVG_SAMPLES_PER_SEGMENT: int = 64
    SVG_GRID_DENSITY: int = 24


@dataclass
class VerificationConfig:
    """
    Configuration for the verification suites.

    Attributes:
        SEAM_SAMPLES: Points per seam
        FD_POINTS_PER_REGION: Random interior points per region for the derivative check
        ROUND_TRIP_POINTS: Random points for the forward/inverse round trip
        INJECTIVITY_GRID: Points per axis of the injectivity grid
        MONOTONICITY_POINTS: Points per monotonicity sweep
        RANDOM_SEED: Seed of every random sample
    """
    SEAM_SAMPLES: int = 150
    FD_POINTS_PER_REGION: int = 1000
    ROUND_TRIP_POINTS: int = 10000
    INJECTIVITY_GRID: int = 200
    MONOTONICITY_POINTS: int = 2001
    RANDOM_SEED: int = 42


class APIConfig:
    """Configuration for the REST server"""
    HOST = os.getenv('QRTRAP_HOST', '127.0.0.1')
    PORT = int(os.getenv('QRTRAP_PORT', '8000'))


class LoggingConfig:
    """Configuration for application logging"""
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    LOG_FILE: Optional[str] = os.getenv('LOG_FILE') or None


# Export default configurations
DEFAULT_MAP_CONFIG = MapConfig()
DEFAULT_DILATATION_CONFIG = DilatationConfig()
DEFAULT_ELLIPTIC_CONFIG = EllipticConfig()
DEFAULT_SCAN_CONFIG = ScanConfig()
DEFAULT_OUTPUT_CONFIG = OutputConfig()
DEFAULT_VERIFICATION_CONFIG = VerificationConfig()


def configure_logging(level: Optional[str] = None) -> None:
    """
    Configure root logging once for an entry point.

    Args:
        level: Log level name overriding LoggingConfig.LOG_LEVEL
    """
    handlers = [logging.StreamHandler()]
    if LoggingConfig.LOG_FILE:
        handlers.append(logging.FileHandler(LoggingConfig.LOG_FILE))
    logging.basicConfig(
        level=(level or LoggingConfig.LOG_LEVEL).upper(),
        format=LoggingConfig.LOG_FORMAT,
        handlers=handlers,
    )
