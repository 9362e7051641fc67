"""配置模組:Settings 與 Python 設定檔載入"""

from .settings import Settings

__all__ = ["Settings"]
