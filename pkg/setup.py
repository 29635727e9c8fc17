#!/usr/bin/env python3
"""Setup configuration for caplab package"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README for long description
readme_file = Path(__file__).parent / "README.md"
if readme_file.exists():
    with open(readme_file, "r", encoding="utf-8") as fh:
        long_description = fh.read()
else:
    long_description = "Numerical laboratory for moving-plane caps, Kelvin transforms and a priori bounds"

# Core requirements
install_requires = [
    "numpy>=1.22.0",
    "scipy>=1.8.0",  # sparse solves, ODE shooting, root finding, KD-trees
    "click>=8.0.0",
    "rich>=10.0.0",
    "python-dotenv>=0.19.0",
    "openpyxl>=3.0.0",  # Excel tables for check reports and custom nonlinearity tables
]

# Optional requirements
extras_require = {
    "dev": [
        "pytest>=6.0.0",
        "black>=22.0.0",
        "flake8>=4.0.0",
        "mypy>=0.950",
        "pytest-cov>=3.0.0",
    ],
}

setup(
    name="caplab",
    version="1.0.0",
    description="Moving-plane caps, Kelvin transforms and a priori bound checks for semilinear elliptic problems",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    include_package_data=True,
    package_data={
        "caplab": ["py.typed", "presets/*.json"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Environment :: Console",
    ],
    keywords=[
        "moving planes", "kelvin transform", "elliptic pde", "finite differences",
        "shooting method", "a priori bounds", "cli"
    ],
    python_requires=">=3.9",
    install_requires=install_requires,
    extras_require=extras_require,
    entry_points={
        "console_scripts": [
            "caplab=caplab_cli.main:cli",
        ],
    },
    zip_safe=False,
    platforms=["any"],
    license="MIT",
)
