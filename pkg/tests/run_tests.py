#!/usr/bin/env python3
"""Main test runner for all tests"""

import sys
from pathlib import Path

import pytest

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

CATEGORIES = [
    ("Geometry", "geometry"),
    ("Solvers", "solver"),
    ("Kelvin Transform", "kelvin"),
    ("Nonlinearities", "nonlinearity"),
    ("Convexity", "convexity"),
    ("Checks", "verify"),
    ("Importers", "importers"),
    ("CLI", "cli"),
]


def run_category(title: str, directory: str) -> int:
    """Run one test directory and return the pytest exit code"""
    print("\n" + "=" * 50)
    print(f"RUNNING {title.upper()} TESTS")
    print("=" * 50)
    code = pytest.main([str(Path(__file__).parent / directory), "-q"])
    print(f"{'OK' if code == 0 else 'FAILED'}: {title}")
    return code


def main():
    """Run all tests"""
    print("CAPLAB TEST SUITE")
    print("=" * 50)
    print(f"Project root: {project_root}")

    selected = sys.argv[1:]
    failures = []
    try:
        for title, directory in CATEGORIES:
            if selected and directory not in selected:
                continue
            if run_category(title, directory) != 0:
                failures.append(title)
        if not selected:
            if pytest.main([str(Path(__file__).parent / "test_basic.py"), "-q", "-s"]) != 0:
                failures.append("Basic workflow")
    except KeyboardInterrupt:
        print("\n\nTests interrupted by user")
        return 1

    print("\n" + "=" * 50)
    if failures:
        print(f"FAILED CATEGORIES: {', '.join(failures)}")
        return 1
    print("ALL TESTS PASSED")
    return 0


if __name__ == "__main__":
    sys.exit(main())
