"""匯出服務"""

import logging
from datetime import datetime
from pathlib import Path
from typing import Optional

import pandas as pd

from ..config import Settings
from ..models import SignScanReport
from .codec import dumps, scan_report_to_json

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "xlsx")


class ExportService:
    """匯出服務 - 處理符號掃描報告的匯出"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self._ensure_reports_folder()

    def _ensure_reports_folder(self):
        """確保報告資料夾存在"""
        Path(self.settings.REPORTS_DIR).mkdir(parents=True, exist_ok=True)

    def _target(self, filename: Optional[str], suffix: str) -> Path:
        if filename is None:
            filename = f"scan_{datetime.now().strftime('%Y%m%d_%H%M%S')}.{suffix}"
        path = Path(filename)
        if not path.is_absolute() and path.parent == Path("."):
            path = Path(self.settings.REPORTS_DIR) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def to_dataframe(report: SignScanReport) -> pd.DataFrame:
        """每個 (k, α, t) 格點一列"""
        rows = []
        for s in report.series:
            for t, value, error, sign in zip(s.t_grid, s.values, s.errors, s.signs):
                rows.append(
                    {
                        "order": s.order,
                        "alpha": s.alpha,
                        "t": t,
                        "value": value,
                        "error": error,
                        "sign": sign,
                        "expected_sign": s.expected_sign,
                    }
                )
        return pd.DataFrame(
            rows, columns=["order", "alpha", "t", "value", "error", "sign", "expected_sign"]
        )

    @staticmethod
    def violations_dataframe(report: SignScanReport) -> pd.DataFrame:
        rows = [
            {
                "order": s.order,
                "alpha": s.alpha,
                "t_lo": v.t_lo,
                "t_hi": v.t_hi,
                "value": v.value,
                "error": v.error,
                "spectral_value": v.spectral_value,
            }
            for s in report.series
            for v in s.violations
        ]
        return pd.DataFrame(
            rows, columns=["order", "alpha", "t_lo", "t_hi", "value", "error", "spectral_value"]
        )

    def export(self, report: SignScanReport, fmt: str, filename: Optional[str] = None) -> Optional[str]:
        """
        依格式匯出

        Args:
            report: 掃描報告
            fmt: "json"、"csv" 或 "xlsx"
            filename: 檔案名稱 (可選,不含目錄時放在 REPORTS_DIR)

        Returns:
            str: 匯出的檔案路徑,失敗則返回 None

        Raises:
            ValueError: 不支援的格式
        """
        if fmt not in FORMATS:
            raise ValueError(f"不支援的匯出格式: {fmt} (可用: {', '.join(FORMATS)})")
        if not report.series:
            logger.warning("沒有掃描結果可匯出")
            return None

        try:
            path = self._target(filename, fmt)
            if fmt == "json":
                path.write_text(dumps(scan_report_to_json(report)) + "\n", encoding="utf-8")
            elif fmt == "csv":
                self.to_dataframe(report).to_csv(path, index=False)
            else:
                self._write_excel(report, path)
        except (OSError, ValueError) as e:
            logger.error(f"✗ 匯出 {fmt} 時發生錯誤: {e}")
            return None

        logger.info(f"✓ 已匯出至: {path}")
        return str(path)

    def _write_excel(self, report: SignScanReport, path: Path):
        summary = pd.DataFrame(
            [{"項目": key, "值": value} for key, value in report.get_summary().items()]
        )
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            self.to_dataframe(report).to_excel(writer, sheet_name="掃描值", index=False)
            self.violations_dataframe(report).to_excel(writer, sheet_name="違反區間", index=False)
            summary.to_excel(writer, sheet_name="統計資訊", index=False)

            # 調整欄寬
            for name in ("掃描值", "違反區間"):
                worksheet = writer.sheets[name]
                for column in "ABCDEFG":
                    worksheet.column_dimensions[column].width = 14

    def generate_text_report(self, report: SignScanReport, show_all: bool = False) -> str:
        """
        生成文字報表

        Args:
            report: 掃描報告
            show_all: 是否列出所有格點 (預設只列違反區間)
        """
        if not report.series:
            return "沒有任何掃描結果"

        text = "\n" + "=" * 80 + "\n"
        text += f"{'完全單調性符號掃描報表':^70}\n"
        text += f"{'產生時間: ' + report.generated_at.strftime('%Y-%m-%d %H:%M:%S'):^70}\n"
        text += "=" * 80 + "\n\n"

        if show_all:
            text += self.to_dataframe(report).to_string(index=False) + "\n\n"

        violations = self.violations_dataframe(report)
        if violations.empty:
            text += "沒有發現違反符號的區間\n"
        else:
            text += violations.to_string(index=False) + "\n"

        summary = report.get_summary()
        text += "\n" + "-" * 80 + "\n"
        text += "統計資訊:\n"
        text += "-" * 80 + "\n"
        text += f"熵種類: {summary['kind']}\n"
        text += f"掃描序列: {summary['series']} 條\n"
        text += f"格點數: {summary['cells']}\n"
        text += f"有違反的 (k, α): {summary['violating_pairs']} 組\n"
        text += f"失敗格點: {summary['failed_cells']}\n"
        text += "=" * 80 + "\n"
        return text
