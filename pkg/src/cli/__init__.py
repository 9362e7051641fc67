"""命令列介面"""

from .main import build_parser, dispatch, main

__all__ = ["build_parser", "dispatch", "main"]
