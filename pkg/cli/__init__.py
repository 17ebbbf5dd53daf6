"""
MV Completion Lab - Command Line Package

Description parsing, command dispatch and report rendering behind main.py.
"""

__all__ = [
    'AnalysisCommander',
    'AnalysisReport',
    'parse_description',
    'load_description',
]

from .commander import AnalysisCommander
from .descriptions import parse_description, load_description
from .reports import AnalysisReport
