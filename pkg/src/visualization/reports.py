"""
Report Rendering - Text, JSON and CSV Output
Turns bound reports, map evaluations, scans and verification results into
deterministic text, versioned JSON documents and full-precision CSV
"""
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd

from ..estimates.bounds import BoundsReport, ParallelogramReport
from ..mapping.qcmap import MapEvaluation
from ..utils.config import DEFAULT_ELLIPTIC_CONFIG, DEFAULT_OUTPUT_CONFIG, OutputConfig
from ..utils.exceptions import DomainError
from ..verification.checks import VerificationReport

logger = logging.getLogger(__name__)

# Closed-form values are exact up to floating-point rounding.
CLOSED_FORM_TOLERANCE = 0.0

MAP_COLUMNS = ['x', 'y', 'u', 'v', 'region']


def result(name: str, value: float, tolerance: float = CLOSED_FORM_TOLERANCE) -> Dict:
    return {'name': name, 'value': float(value), 'tolerance': float(tolerance)}


def bounds_results(report: BoundsReport) -> List[Dict]:
    """Result entries of a trapezoid bound report; the lower bound carries the lambda_0 root tolerance."""
    return [
        result('lower', report.lower, DEFAULT_ELLIPTIC_CONFIG.LAMBDA0_XTOL),
        result('upper_tau', report.upper_tau),
        result('upper_new', report.upper_new),
        result('K_tilde', report.K_tilde),
        result('tau', report.tau),
    ]


def parallelogram_results(report: ParallelogramReport) -> List[Dict]:
    return [
        result('upper', report.upper),
        result('upper_via_trapezoid', report.upper_via_trapezoid),
    ]


def verification_checks(report: VerificationReport) -> List[Dict]:
    return [
        {
            'name': check.name,
            'passed': check.passed,
            'value': check.value,
            'tolerance': check.tolerance,
            'margin': check.margin,
        }
        for check in report.checks
    ]


def table_results(frame: pd.DataFrame) -> List[Dict]:
    """One result entry per row, every row carrying the closed-form tolerance."""
    records = frame.to_dict(orient='records')
    for record in records:
        record['tolerance'] = CLOSED_FORM_TOLERANCE
    return records


def map_table(evaluations: Sequence[MapEvaluation]) -> pd.DataFrame:
    """Tabulate map evaluations with columns x, y, u, v, region."""
    rows = [
        (e.input.x, e.input.y, e.output.x, e.output.y, str(e.region))
        for e in evaluations
    ]
    return pd.DataFrame(rows, columns=MAP_COLUMNS)


def report_document(
    command: str,
    config: Dict,
    results: List[Dict],
    checks: Optional[List[Dict]] = None,
    output_config: Optional[OutputConfig] = None,
) -> Dict:
    """
    Assemble the versioned JSON document.

    Args:
        command: CLI command that produced the document
        config: Run parameters
        results: Result entries
        checks: Check entries, empty for commands without checks
        output_config: OutputConfig carrying the schema version

    Returns:
        Dictionary with schema_version, command, config, results and checks
    """
    output_config = output_config or DEFAULT_OUTPUT_CONFIG
    return {
        'schema_version': output_config.SCHEMA_VERSION,
        'command': command,
        'config': config,
        'results': results,
        'checks': checks or [],
    }


def to_json(document: Dict) -> str:
    """
    Serialize with stable key order.

    Raises:
        DomainError: If the document holds NaN or infinity
    """
    try:
        return json.dumps(document, indent=2, allow_nan=False) + "\n"
    except ValueError as exc:
        raise DomainError(f"report holds a non-finite value, use text or csv output ({exc})") from exc


def to_csv(frame: pd.DataFrame, output_config: Optional[OutputConfig] = None) -> str:
    """Header row, comma separated, LF line endings, 17 significant digits."""
    output_config = output_config or DEFAULT_OUTPUT_CONFIG
    return frame.to_csv(index=False, float_format=output_config.CSV_FLOAT_FORMAT, lineterminator='\n')


def bounds_text(report: BoundsReport) -> str:
    t = report.trapezoid
    lines = [
        f"trapezoid  alpha={t.alpha:.17g} d={t.d:.17g} c={t.c:.17g} ell={t.ell:.17g}",
        f"lower      {report.lower:.17g}  ({report.branch.value})",
        f"upper_tau  {report.upper_tau:.17g}",
        f"upper_new  {report.upper_new:.17g}",
        f"K_tilde    {report.K_tilde:.17g}",
        f"tau        {report.tau:.17g}",
        f"branch     {report.branch.value}",
    ]
    return "\n".join(lines) + "\n"


def parallelogram_text(report: ParallelogramReport) -> str:
    pg = report.parallelogram
    lines = [
        f"parallelogram  alpha={pg.alpha:.17g} a={pg.a:.17g} half_c={pg.half_c:.17g} half_d={pg.half_d:.17g}",
        f"upper                {report.upper:.17g}",
        f"upper_via_trapezoid  {report.upper_via_trapezoid:.17g}",
    ]
    return "\n".join(lines) + "\n"


def verification_text(report: VerificationReport) -> str:
    t = report.trapezoid
    lines = [f"verify  alpha={t.alpha:.17g} d={t.d:.17g} resolution={report.resolution}"]
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(
            f"{status}  {check.name:<28} value={check.value:.6e} tolerance={check.tolerance:.6e} margin={check.margin:.6e}"
        )
    lines.append("all checks passed" if report.passed else f"failed: {', '.join(report.failed)}")
    return "\n".join(lines) + "\n"


def table_text(frame: pd.DataFrame) -> str:
    return frame.to_string(index=False, float_format=lambda v: f"{v:.12g}") + "\n"


def emit(content: Union[str, bytes], out: Optional[str] = None) -> None:
    """
    Write rendered output to a file or to stdout.

    Raises:
        OSError: If the file cannot be written
    """
    data = content.encode('utf-8') if isinstance(content, str) else content
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    Path(out).write_bytes(data)
    logger.info(f"Wrote {len(data)} bytes to {out}")
