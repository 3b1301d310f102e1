"""
Setup script for softdikin-core package.

This is maintained for backward compatibility.
The primary build configuration is in pyproject.toml.
"""

from setuptools import setup, find_packages

setup(
    name="softdikin-core",
    version="0.1.0",
    packages=find_packages(include=["softdikin_core*"]),
    python_requires=">=3.8",
    install_requires=["numpy>=1.21.0", "scipy>=1.8.0"],
    entry_points={"console_scripts": ["softdikin=softdikin_core.cli:main"]},
)
