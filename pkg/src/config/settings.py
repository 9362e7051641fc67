"""系統設定"""

import os
from dataclasses import dataclass, field, fields
from fractions import Fraction


def _default_jobs() -> int:
    value = os.environ.get("ENTROPYFLOW_JOBS", "")
    try:
        jobs = int(value)
    except ValueError:
        jobs = 0
    return jobs if jobs > 0 else (os.cpu_count() or 1)


@dataclass
class Settings:
    """系統設定"""

    # 符號引擎
    MAX_DERIVATIVE_ORDER: int = 12
    MAX_CANONICAL_TERMS: int = 200_000

    # 數值積分 (截斷區間為 [最小中心 − R·σ_max, 最大中心 + R·σ_max])
    TRUNCATION_RADIUS: float = 12.0
    QUAD_ABS_TOL: float = 1e-13
    QUAD_REL_TOL: float = 1e-11
    QUAD_MAX_SUBDIVISIONS: int = 400
    # quad_vec 未收斂時放寬容許誤差的倍數
    QUAD_RETRY_FACTOR: float = 1e3

    # 譜微分路線
    CHEB_DEGREE: int = 64
    CHEB_WINDOW: tuple[float, float] = field(default_factory=lambda: (0.5, 2.0))
    CHEB_CHOP_TOL: float = 1e-15
    SPECTRAL_MAX_ORDER: int = 9
    SPECTRAL_PANELS: int = 96
    SPECTRAL_NODES_PER_PANEL: int = 32

    # SOS / SDP
    SDP_SOLVER: str = "CLARABEL"
    SDP_FALLBACK_SOLVER: str = "SCS"
    SDP_MARGIN_CAP: float = 10.0
    SDP_RESIDUAL_TOL: float = 1e-9
    SDP_MARGIN_TOL: float = 1e-9
    SDP_SLACK_TOL: float = 1e-12
    K3_ALPHA_GRID: tuple[float, ...] = field(
        default_factory=lambda: (0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    )
    K4_ALPHA_GRID: tuple[float, ...] = field(
        default_factory=lambda: (0.92, 1.1, 1.28, 1.46, 1.64, 1.81)
    )
    ROUND_DENOMINATOR: int = 10000

    # 精確驗證
    ENDPOINT_PERTURBATION: Fraction = Fraction(1, 10**6)
    ROOT_ISOLATION_WIDTH: Fraction = Fraction(1, 10**6)

    # 符號掃描
    VIOLATION_FACTOR: float = 10.0
    BRACKET_WIDTH: float = 1e-3
    # 每個相鄰格點區間內額外檢查的點數 (0 表示不細分)
    SCAN_REFINE_POINTS: int = 4
    SHANNON_THRESHOLD: float = 1e-9

    # 執行環境
    JOBS: int = field(default_factory=_default_jobs)
    REPORTS_DIR: str = "reports"
    LOG_FILE: str = "logs/entropyflow.log"

    @classmethod
    def from_file(cls, filepath: str = "config.py"):
        """從 Python 設定檔載入,只採用檔案中有定義的欄位"""
        try:
            import importlib.util

            spec = importlib.util.spec_from_file_location("config", filepath)
            config_module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(config_module)

            overrides = {
                f.name: getattr(config_module, f.name)
                for f in fields(cls)
                if hasattr(config_module, f.name)
            }
            return cls(**overrides)
        except Exception:
            return cls()
