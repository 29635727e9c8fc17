"""CLI package for caplab"""

__version__ = "1.0.0"
