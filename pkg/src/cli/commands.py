"""
Command-Line Interface - bounds, map, verify, scan and grid-svg
Parses arguments into a validated RunConfig, dispatches to the library and
renders the result; exit codes are 0 on success, 1 when verification fails
and 2 on usage, domain or I/O errors
"""
import argparse
import logging
import sys
from typing import Callable, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, model_validator

from ..estimates.bounds import bounds_report, compare_scan, parallelogram_report
from ..geometry.shapes import PlanePoint, Window, make_parallelogram, make_trapezoid
from ..mapping.qcmap import forward, forward_parallelogram, inverse
from ..utils.config import DEFAULT_SCAN_CONFIG, configure_logging
from ..utils.exceptions import QRError
from ..verification.checks import run_verification
from ..visualization import reports
from ..visualization.svg_grid import render_grid_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

Command = Literal['bounds', 'map', 'verify', 'scan', 'grid-svg']
OutputFormat = Literal['csv', 'json', 'svg', 'text']

FORMATS: Dict[str, Tuple[str, ...]] = {
    'bounds': ('text', 'json'),
    'map': ('text', 'csv', 'json'),
    'verify': ('text', 'json'),
    'scan': ('csv', 'json', 'text'),
    'grid-svg': ('svg',),
}


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation."""
    command: Command
    alpha: Optional[float] = None
    d: Optional[float] = None
    a: Optional[float] = None
    parallelogram: bool = False
    c_min: float = DEFAULT_SCAN_CONFIG.C_MIN
    c_max: float = DEFAULT_SCAN_CONFIG.C_MAX
    n: int = Field(DEFAULT_SCAN_CONFIG.N, ge=2)
    log_spacing: bool = DEFAULT_SCAN_CONFIG.LOG_SPACING
    resolution: Optional[int] = Field(None, ge=8)
    tol: Optional[float] = Field(None, gt=0)
    density: Optional[int] = Field(None, ge=1)
    window: Optional[Tuple[float, float, float, float]] = None
    points: List[Tuple[float, float]] = Field(default_factory=list)
    inverse: bool = False
    format: Optional[OutputFormat] = None
    out: Optional[str] = None

    @model_validator(mode='after')
    def check_command_parameters(self) -> "RunConfig":
        if self.alpha is None:
            raise ValueError(f"{self.command} needs --alpha")
        if self.a is not None and not self.parallelogram:
            self.parallelogram = True
        if self.parallelogram:
            if self.command not in ('bounds', 'map'):
                raise ValueError(f"--parallelogram is not supported by {self.command}")
            if self.a is None:
                raise ValueError("--parallelogram needs --a")
            if self.inverse:
                raise ValueError("--inverse is only available for trapezoids")
        elif self.command != 'scan' and self.d is None:
            raise ValueError(f"{self.command} needs --d")
        if self.command == 'map' and not self.points:
            raise ValueError("map needs at least one --point X Y")
        allowed = FORMATS[self.command]
        if self.format is None:
            self.format = allowed[0]
        elif self.format not in allowed:
            raise ValueError(f"{self.command} writes {', '.join(allowed)}, not {self.format}")
        return self

    def report_config(self) -> Dict:
        """Parameters echoed into JSON documents."""
        return self.model_dump(mode='json', exclude={'out', 'format'}, exclude_none=True)


def cmd_bounds(config: RunConfig) -> Tuple[str, int]:
    """Bound report of a trapezoid, or the upper bound of a parallelogram."""
    if config.parallelogram:
        report = parallelogram_report(make_parallelogram(config.alpha, config.a))
        if config.format == 'json':
            document = reports.report_document('bounds', config.report_config(), reports.parallelogram_results(report))
            return reports.to_json(document), EXIT_OK
        return reports.parallelogram_text(report), EXIT_OK

    report = bounds_report(make_trapezoid(config.alpha, config.d))
    if config.format == 'json':
        document = reports.report_document('bounds', config.report_config(), reports.bounds_results(report))
        document['branch'] = report.branch.value
        return reports.to_json(document), EXIT_OK
    return reports.bounds_text(report), EXIT_OK


def cmd_map(config: RunConfig) -> Tuple[str, int]:
    """Evaluate the map (or its inverse) at every --point."""
    points = [PlanePoint(x, y) for x, y in config.points]
    if config.parallelogram:
        pg = make_parallelogram(config.alpha, config.a)
        evaluations = [forward_parallelogram(pg, p) for p in points]
    else:
        t = make_trapezoid(config.alpha, config.d)
        evaluate = inverse if config.inverse else forward
        evaluations = [evaluate(t, p) for p in points]

    table = reports.map_table(evaluations)
    if config.format == 'csv':
        return reports.to_csv(table), EXIT_OK
    if config.format == 'json':
        document = reports.report_document('map', config.report_config(), reports.table_results(table))
        return reports.to_json(document), EXIT_OK
    return reports.table_text(table), EXIT_OK


def cmd_verify(config: RunConfig) -> Tuple[str, int]:
    """Run the verification suites; exit 1 if any check fails."""
    t = make_trapezoid(config.alpha, config.d)
    report = run_verification(t, resolution=config.resolution, tol=config.tol)
    code = EXIT_OK if report.passed else EXIT_CHECK_FAILED
    if config.format == 'json':
        checks = reports.verification_checks(report)
        results = [reports.result(check['name'], check['value'], check['tolerance']) for check in checks]
        document = reports.report_document('verify', config.report_config(), results, checks)
        document['passed'] = report.passed
        return reports.to_json(document), code
    return reports.verification_text(report), code


def cmd_scan(config: RunConfig) -> Tuple[str, int]:
    """Majorant comparison table over the smaller base c."""
    table = compare_scan(config.alpha, config.c_min, config.c_max, config.n, config.log_spacing)
    if config.format == 'json':
        document = reports.report_document('scan', config.report_config(), reports.table_results(table))
        return reports.to_json(document), EXIT_OK
    if config.format == 'text':
        return reports.table_text(table), EXIT_OK
    return reports.to_csv(table), EXIT_OK


def cmd_grid_svg(config: RunConfig) -> Tuple[bytes, int]:
    """SVG image of a Cartesian grid under the map."""
    t = make_trapezoid(config.alpha, config.d)
    window = None
    if config.window is not None:
        x_min, x_max, y_min, y_max = config.window
        window = Window(x_min, x_max, y_min, y_max)
    return render_grid_svg(t, window=window, density=config.density), EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], Tuple[Union[str, bytes], int]]] = {
    'bounds': cmd_bounds,
    'map': cmd_map,
    'verify': cmd_verify,
    'scan': cmd_scan,
    'grid-svg': cmd_grid_svg,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--alpha', type=float, help='Acute angle in units of pi')
    common.add_argument('--format', choices=['csv', 'json', 'svg', 'text'], help='Output format')
    common.add_argument('--out', metavar='PATH', help='Write output to PATH instead of stdout')
    common.add_argument('--log-level', default=None, help='Logging level (default: LOG_LEVEL or INFO)')

    shape = argparse.ArgumentParser(add_help=False)
    shape.add_argument('--d', type=float, help='Half-length of the bigger base')
    shape.add_argument('--a', type=float, help='Side length of the parallelogram (implies --parallelogram)')
    shape.add_argument('--parallelogram', action='store_true', help='Use the parallelogram Pi(alpha, a)')

    parser = argparse.ArgumentParser(
        prog='qrtrap',
        description='Quasiconformal reflection bounds for isosceles trapezoids',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('bounds', parents=[common, shape], help='Evaluate every bound')

    map_parser = subparsers.add_parser('map', parents=[common, shape], help='Evaluate the piecewise map')
    map_parser.add_argument('--point', dest='points', type=float, nargs=2, action='append', default=[],
                            metavar=('X', 'Y'), help='Point to evaluate (repeatable)')
    map_parser.add_argument('--inverse', action='store_true', help='Evaluate the inverse map')

    verify_parser = subparsers.add_parser('verify', parents=[common], help='Run the verification suites')
    verify_parser.add_argument('--d', type=float, help='Half-length of the bigger base')
    verify_parser.add_argument('--resolution', type=int, help='Grid resolution of the dilatation maximisation')
    verify_parser.add_argument('--tol', type=float, help='Tolerance of the seam, round-trip and complex-form checks')

    scan_parser = subparsers.add_parser('scan', parents=[common], help='Tabulate the majorants over c')
    scan_parser.add_argument('--c-min', type=float, default=DEFAULT_SCAN_CONFIG.C_MIN)
    scan_parser.add_argument('--c-max', type=float, default=DEFAULT_SCAN_CONFIG.C_MAX)
    scan_parser.add_argument('--n', type=int, default=DEFAULT_SCAN_CONFIG.N, help='Number of rows')
    scan_parser.add_argument('--log-spacing', action='store_true', help='Space c geometrically')

    svg_parser = subparsers.add_parser('grid-svg', parents=[common], help='Render the grid distortion as SVG')
    svg_parser.add_argument('--d', type=float, help='Half-length of the bigger base')
    svg_parser.add_argument('--density', type=int, help='Grid cells per axis')
    svg_parser.add_argument('--window', type=float, nargs=4, metavar=('XMIN', 'XMAX', 'YMIN', 'YMAX'),
                            help='Source window (default [-3d, 3d] x [-2, 3])')
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if key != 'log_level' and value is not None}
    return RunConfig(**values)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, execute one command and write its output.

    Args:
        argv: Arguments without the program name (sys.argv[1:] by default)

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    configure_logging(args.log_level)
    try:
        config = _run_config(args)
    except ValidationError as exc:
        message = "; ".join(error['msg'] for error in exc.errors())
        logger.error(f"invalid arguments: {message}")
        print(f"qrtrap: error: {message}", file=sys.stderr)
        return EXIT_USAGE

    try:
        content, code = COMMANDS[config.command](config)
    except (QRError, ArithmeticError) as exc:
        logger.error(f"{config.command} failed: {exc}")
        print(f"qrtrap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        reports.emit(content, config.out)
    except OSError as exc:
        logger.error(f"cannot write {config.out}: {exc}")
        print(f"qrtrap: error: cannot write {config.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return code
