"""
Setup script for the nurse rostering toolkit.
"""

from setuptools import setup, find_packages

setup(
    name="nurse_roster",
    version="0.1.0",
    packages=find_packages("src"),
    package_dir={"": "src"},
    install_requires=[
        "colorama>=0.4.6",
        "streamlit>=1.29.0",
        "numpy>=1.24",
        "scipy>=1.10",
        "pandas>=2.0",
        "pydantic>=2.5",
    ],
    entry_points={
        "console_scripts": [
            "nurse-roster=nurse_roster.main:main",
            "roster-solver=nurse_roster.main:solver_main",
        ],
    },
)
