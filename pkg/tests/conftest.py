"""測試配置與共用 fixture"""

import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

# 將專案根目錄加入路徑,測試以 src.… 匯入
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.models import MixtureDensity  # noqa: E402

settings.register_profile("dev", max_examples=50, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


@pytest.fixture
def two_point() -> MixtureDensity:
    """½(δ₁ + δ₋₁) 經熱流後的兩點混合"""
    return MixtureDensity.two_point()
