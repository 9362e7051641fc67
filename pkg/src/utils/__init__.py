"""工具模組:日誌設定"""

from .logger import LOG_FORMAT, ColorFormatter, setup_logging

__all__ = ["LOG_FORMAT", "ColorFormatter", "setup_logging"]
