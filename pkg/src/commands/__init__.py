"""Command handlers behind the CLI"""

from .tools import CHECKS, CheckTools, conclude

__all__ = ["CHECKS", "CheckTools", "conclude"]
