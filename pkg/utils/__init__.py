"""
Utilities for the IPR matrix lab

This package contains the base engine class and the logging setup
shared by the search and sweep code.
"""

from .base_engine import BaseEngine
from .logger_config import setup_logger

__all__ = ['BaseEngine', 'setup_logger']
