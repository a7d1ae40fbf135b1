#!/usr/bin/env python3
"""Run the acceptance suite with per-criterion PASS/FAIL lines visible."""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    sys.path.insert(0, str(ROOT / "src"))
    sys.exit(pytest.main(["-s", "-q", str(ROOT / "tests" / "test_acceptance.py"), *sys.argv[1:]]))
