"""工具函式"""

import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

from colorama import Fore, Style, just_fix_windows_console

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

_LEVEL_COLORS = {
    logging.DEBUG: Style.DIM,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """依等級為終端輸出上色"""

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        color = _LEVEL_COLORS.get(record.levelno)
        return f"{color}{message}{Style.RESET_ALL}" if color else message


def setup_logging(
    level: int = logging.INFO,
    stream: Optional[TextIO] = None,
    log_file: Optional[str] = "logs/entropyflow.log",
):
    """
    設定日誌系統

    終端輸出寫到 stderr,stdout 保留給結果;log_file 為 None 時不寫檔。
    """
    stream = stream or sys.stderr
    just_fix_windows_console()

    console = logging.StreamHandler(stream)
    console.setFormatter(ColorFormatter(LOG_FORMAT))
    handlers = [console]

    if log_file:
        # 建立 logs 資料夾
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=level, handlers=handlers, force=True)
