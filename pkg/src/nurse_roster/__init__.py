"""
Multi-stage nurse rostering toolkit.

Reads and writes the text instance formats, evaluates rosters, solves single
weeks, drives external solvers week by week and scores competitions.
"""

__version__ = "0.1.0"
