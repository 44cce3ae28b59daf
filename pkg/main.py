"""
qrtrap - Main Application
Command-line entry point for bounds, map evaluation, verification, scans and
grid-distortion rendering
"""
import sys
from typing import List, Optional

from src.cli.commands import run


def main(argv: Optional[List[str]] = None) -> int:
    """Run one qrtrap command and return its exit code."""
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
