"""測試日誌設定"""

import io
import logging

from colorama import Fore

from src.utils import ColorFormatter, setup_logging


class TestSetupLogging:
    """測試終端與檔案輸出"""

    def test_console_and_file(self, tmp_path):
        """測試同時寫入 stream 與日誌檔"""
        stream = io.StringIO()
        log_file = tmp_path / "logs" / "entropyflow.log"
        setup_logging(logging.INFO, stream=stream, log_file=str(log_file))
        logging.getLogger("src.test").info("✓ 完成")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert "✓ 完成" in stream.getvalue()
        assert "✓ 完成" in log_file.read_text(encoding="utf-8")

    def test_no_file(self, tmp_path, monkeypatch):
        """測試 log_file 為 None 時不建立資料夾"""
        monkeypatch.chdir(tmp_path)
        setup_logging(logging.WARNING, stream=io.StringIO(), log_file=None)
        assert not (tmp_path / "logs").exists()

    def test_level_filter(self, tmp_path):
        """測試低於等級的訊息不輸出"""
        stream = io.StringIO()
        setup_logging(logging.WARNING, stream=stream, log_file=None)
        logging.getLogger("src.test").info("略過")
        assert "略過" not in stream.getvalue()


class TestColorFormatter:
    """測試顏色"""

    def test_warning_colored(self):
        """測試警告為黃色"""
        record = logging.LogRecord("x", logging.WARNING, __file__, 1, "注意", None, None)
        assert ColorFormatter("%(message)s").format(record).startswith(Fore.YELLOW)

    def test_info_plain(self):
        """測試 INFO 不上色"""
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "一般", None, None)
        assert ColorFormatter("%(message)s").format(record) == "一般"
