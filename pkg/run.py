#!/usr/bin/env python3
"""
Simple launcher for the hermitian lattice toolkit
"""

import sys
from pathlib import Path


def main() -> int:
    """Check the toolkit files are present, then hand over to the CLI."""
    here = Path(__file__).resolve().parent
    required_files = [
        'quadratic_ring.py',
        'exact_linalg.py',
        'hermitian_lattice.py',
        'lattice_cli.py',
    ]

    for file in required_files:
        if not (here / file).exists():
            print(f"Missing required file: {file}", file=sys.stderr)
            return 2

    if str(here) not in sys.path:
        sys.path.insert(0, str(here))
    from lattice_cli import main as cli_main
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())
