"""
Integration tests for the command-line interface
Tests every command, output formats, argument validation and exit codes
"""
import io
import json
import math

import pandas as pd
import pytest
from lxml import etree
from main import main
from src.cli.commands import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, RunConfig, run
from pydantic import ValidationError


@pytest.mark.cli
class TestBoundsCommand:
    """Test suite for `qrtrap bounds`"""

    def test_rectangle_json(self, capsys):
        """Test upper_new = 2 pi d for the rectangle"""
        code = run(['bounds', '--alpha', '0.5', '--d', '3', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)
        results = {r['name']: r['value'] for r in data['results']}

        assert code == EXIT_OK
        assert data['command'] == 'bounds'
        assert data['config']['alpha'] == 0.5
        assert results['upper_new'] == pytest.approx(6 * math.pi, rel=1e-12)
        assert data['branch'] == "c/d>=lambda0"

    def test_text_output(self, capsys):
        """Test the default text report"""
        code = run(['bounds', '--alpha', '0.25', '--d', '2'])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert out.startswith("trapezoid")
        assert "upper_new" in out

    def test_degenerate_trapezoid(self, capsys):
        """Test exit code 2 and the domain message for d <= cot(pi alpha)"""
        code = run(['bounds', '--alpha', '0.25', '--d', '0.5'])
        err = capsys.readouterr().err

        assert code == EXIT_USAGE
        assert "d must exceed cot(pi*alpha)=1" in err

    def test_nearly_degenerate_trapezoid(self, capsys):
        """Test exit code 0 when c/d is below the precision of its complement"""
        code = run(['bounds', '--alpha', '0.25', '--d', '1.000000001', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)
        results = {r['name']: r['value'] for r in data['results']}

        assert code == EXIT_OK
        assert results['lower'] > 0
        assert data['branch'] == "c/d<lambda0"

    def test_huge_d_text(self, capsys):
        """Test that d = 1e200 reports an infinite tau bound instead of crashing"""
        code = run(['bounds', '--alpha', '0.25', '--d', '1e200'])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert "upper_tau  inf" in out

    def test_huge_d_json(self, capsys):
        """Test exit code 2 when the JSON report would hold infinity"""
        code = run(['bounds', '--alpha', '0.25', '--d', '1e200', '--format', 'json'])
        captured = capsys.readouterr()

        assert code == EXIT_USAGE
        assert captured.out == ""
        assert "non-finite" in captured.err

    def test_parallelogram(self, capsys):
        """Test that --a selects the parallelogram bound"""
        code = run(['bounds', '--alpha', '0.25', '--a', '3', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)
        results = {r['name']: r['value'] for r in data['results']}

        assert code == EXIT_OK
        assert results['upper'] == pytest.approx(results['upper_via_trapezoid'], rel=1e-12)
        assert data['config']['parallelogram'] is True

    def test_parallelogram_needs_side(self, capsys):
        """Test that --parallelogram without --a is a usage error"""
        assert run(['bounds', '--alpha', '0.25', '--parallelogram']) == EXIT_USAGE
        assert "--a" in capsys.readouterr().err

    def test_missing_alpha(self, capsys):
        """Test that --alpha is required"""
        assert run(['bounds', '--d', '2']) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        """Test that argparse errors map to exit code 2"""
        assert run(['reflect', '--alpha', '0.3']) == EXIT_USAGE

    def test_main_entry_point(self, capsys):
        """Test that main() returns the command's exit code"""
        assert main(['bounds', '--alpha', '0.3', '--d', '2']) == EXIT_OK


@pytest.mark.cli
class TestMapCommand:
    """Test suite for `qrtrap map`"""

    def test_forward_csv(self, capsys):
        """Test f1(1.2 + 0.4i) = 1.5 + 0.4i"""
        code = run(['map', '--alpha', '0.25', '--d', '2', '--point', '1.2', '0.4', '--format', 'csv'])
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))

        assert code == EXIT_OK
        assert list(table.columns) == ['x', 'y', 'u', 'v', 'region']
        assert table['u'].iloc[0] == pytest.approx(1.5, rel=1e-14)
        assert table['region'].iloc[0] == 'G1/right'

    def test_inverse_json(self, capsys):
        """Test the inverse at 1.5 + 0.4i"""
        code = run(['map', '--alpha', '0.25', '--d', '2', '--point', '1.5', '0.4', '--inverse', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)

        assert code == EXIT_OK
        assert data['results'][0]['u'] == pytest.approx(1.2, rel=1e-14)
        assert data['config']['inverse'] is True

    def test_several_points(self, capsys):
        """Test one row per --point"""
        code = run(['map', '--alpha', '0.3', '--d', '2', '--point', '0', '0.5', '--point', '-3', '2', '--format', 'csv'])

        assert code == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 3

    def test_parallelogram_map(self, capsys):
        """Test the parallelogram extension at a vertex"""
        code = run(['map', '--alpha', '0.25', '--a', '3', '--point', '1', '0', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)

        assert code == EXIT_OK
        assert data['results'][0]['u'] == pytest.approx(2.0, abs=1e-12)
        assert data['results'][0]['v'] == pytest.approx(0.0, abs=1e-12)

    def test_requires_points(self, capsys):
        """Test that map without --point is a usage error"""
        assert run(['map', '--alpha', '0.25', '--d', '2']) == EXIT_USAGE


@pytest.mark.cli
class TestVerifyCommand:
    """Test suite for `qrtrap verify`"""

    def test_rectangle_passes(self, capsys):
        """Test exit code 0 and per-check tolerances"""
        code = run(['verify', '--alpha', '0.5', '--d', '2', '--resolution', '64', '--format', 'json'])
        data = json.loads(capsys.readouterr().out)

        assert code == EXIT_OK
        assert data['passed'] is True
        assert all('tolerance' in check for check in data['checks'])
        assert all('tolerance' in result for result in data['results'])

    def test_impossible_tolerance_fails(self, capsys):
        """Test exit code 1 when a check cannot hold"""
        code = run(['verify', '--alpha', '0.25', '--d', '2', '--resolution', '64', '--tol', '1e-300'])
        out = capsys.readouterr().out

        assert code == EXIT_CHECK_FAILED
        assert "FAIL" in out

    def test_rejects_parallelogram(self, capsys):
        """Test that verify has no parallelogram mode"""
        assert run(['verify', '--alpha', '0.25', '--d', '2', '--parallelogram']) == EXIT_USAGE


@pytest.mark.cli
class TestScanCommand:
    """Test suite for `qrtrap scan`"""

    def test_two_rows(self, capsys):
        """Test header plus two rows with LF endings"""
        code = run(['scan', '--alpha', '0.3', '--c-min', '0.1', '--c-max', '10', '--n', '2'])
        out = capsys.readouterr().out

        assert code == EXIT_OK
        assert out.splitlines()[0] == "c,d,lower,upper_tau,upper_new"
        assert len(out.splitlines()) == 3
        assert '\r' not in out

    def test_new_bound_wins(self, capsys):
        """Test upper_new < upper_tau along the scan at alpha = 0.45"""
        run(['scan', '--alpha', '0.45', '--n', '50'])
        table = pd.read_csv(io.StringIO(capsys.readouterr().out))

        assert (table['upper_new'] < table['upper_tau']).all()

    def test_deterministic_json(self, capsys):
        """Test byte-identical JSON across runs"""
        run(['scan', '--alpha', '0.3', '--n', '5', '--format', 'json'])
        first = capsys.readouterr().out
        run(['scan', '--alpha', '0.3', '--n', '5', '--format', 'json'])

        assert capsys.readouterr().out == first
        assert json.loads(first)['schema_version'] == "1.0"

    def test_invalid_range(self, capsys):
        """Test that c_min >= c_max is a usage error"""
        assert run(['scan', '--alpha', '0.3', '--c-min', '5', '--c-max', '1']) == EXIT_USAGE

    def test_invalid_format(self, capsys):
        """Test that scan refuses svg output"""
        assert run(['scan', '--alpha', '0.3', '--format', 'svg']) == EXIT_USAGE

    def test_write_to_file(self, tmp_path, capsys):
        """Test --out writes the CSV and leaves stdout empty"""
        target = tmp_path / "scan.csv"
        code = run(['scan', '--alpha', '0.3', '--n', '4', '--out', str(target)])

        assert code == EXIT_OK
        assert capsys.readouterr().out == ""
        assert len(target.read_text().splitlines()) == 5

    def test_unwritable_output(self, tmp_path, capsys):
        """Test exit code 2 naming the path that cannot be written"""
        target = tmp_path / "missing" / "scan.csv"
        code = run(['scan', '--alpha', '0.3', '--n', '4', '--out', str(target)])

        assert code == EXIT_USAGE
        assert str(target) in capsys.readouterr().err


@pytest.mark.cli
class TestGridSvgCommand:
    """Test suite for `qrtrap grid-svg`"""

    def test_renders_svg(self, tmp_path, capsys):
        """Test a parseable, deterministic SVG file"""
        first = tmp_path / "a.svg"
        second = tmp_path / "b.svg"
        assert run(['grid-svg', '--alpha', '0.25', '--d', '2', '--density', '4', '--out', str(first)]) == EXIT_OK
        assert run(['grid-svg', '--alpha', '0.25', '--d', '2', '--density', '4', '--out', str(second)]) == EXIT_OK

        assert first.read_bytes() == second.read_bytes()
        assert etree.fromstring(first.read_bytes()).get('version') == "1.1"

    def test_custom_window(self, capsys):
        """Test --window with four bounds"""
        code = run(['grid-svg', '--alpha', '0.25', '--d', '2', '--density', '2', '--window', '0', '3', '0', '1'])

        assert code == EXIT_OK
        assert b"<svg" in capsys.readouterr().out.encode()

    def test_degenerate_window(self, capsys):
        """Test that an empty window is a usage error"""
        assert run(['grid-svg', '--alpha', '0.25', '--d', '2', '--window', '1', '1', '0', '1']) == EXIT_USAGE


@pytest.mark.cli
class TestRunConfig:
    """Test suite for argument validation"""

    def test_default_format(self):
        """Test that each command gets its first format by default"""
        assert RunConfig(command='scan', alpha=0.3).format == 'csv'
        assert RunConfig(command='bounds', alpha=0.3, d=2.0).format == 'text'

    def test_a_implies_parallelogram(self):
        """Test that --a switches to the parallelogram"""
        assert RunConfig(command='bounds', alpha=0.3, a=2.0).parallelogram is True

    def test_small_resolution(self):
        """Test resolution >= 8"""
        with pytest.raises(ValidationError):
            RunConfig(command='verify', alpha=0.3, d=2.0, resolution=4)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
