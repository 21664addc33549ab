#!/usr/bin/env python3
"""
Bicentric Polygon Runner
========================

Runs the bicentric command line from a source checkout.

Usage:
    python run_bicentric.py solve --n 3 --d 0.2          # Closing incircle radius
    python run_bicentric.py generate --n 5 --d 0.2 --out pentagon.json
    python run_bicentric.py verify pentagon.json         # Re-check a scene
    python run_bicentric.py --help                       # Show help
"""

import sys
from pathlib import Path

# Make the package importable without installing it
sys.path.insert(0, str(Path(__file__).parent))

from bicentric.cli import main

if __name__ == "__main__":
    sys.exit(main())
