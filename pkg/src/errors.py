"""領域錯誤定義

所有錯誤都繼承 EntropyFlowError,並同時繼承對應的內建例外,
呼叫端可以直接捕捉 ValueError / RuntimeError。
"""


class EntropyFlowError(Exception):
    """entropyflow 所有領域錯誤的基底類別"""


class NonCanonical(EntropyFlowError, ValueError):
    """因子組合不是標準形式 (最高階導數的指數必須 ≥ 2)"""


class HomogeneityViolation(EntropyFlowError, ValueError):
    """原始積分的 p 次方偏移量不等於 −Σ指數"""


class ResourceLimit(EntropyFlowError, RuntimeError):
    """導數階數或展開項數超過設定上限"""


class Unsupported(EntropyFlowError, ValueError):
    """不支援的導數階數或熵種類組合"""


class OrderMismatch(EntropyFlowError, ValueError):
    """Gram 基底與目標表示式的總導數階數不一致"""


class NumericalFailure(EntropyFlowError, RuntimeError):
    """SDP 求解器未收斂或回傳無法使用的解"""


class InfeasibleSample(EntropyFlowError, RuntimeError):
    """取樣點的 SDP 在容許誤差內不可行,無法進行曲線擬合"""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class UnresolvedParameter(EntropyFlowError, ValueError):
    """組裝矩陣時有參數無法由約束式唯一決定"""


class EndpointRoot(EntropyFlowError, ValueError):
    """多項式在區間端點為零,Sturm 計數無法直接套用"""


class QuadratureNonConvergence(EntropyFlowError, RuntimeError):
    """數值積分未達到容許誤差"""


class SpectralIllConditioned(EntropyFlowError, RuntimeError):
    """Chebyshev 譜微分在此階數下不穩定"""


__all__ = [
    "EntropyFlowError",
    "NonCanonical",
    "HomogeneityViolation",
    "ResourceLimit",
    "Unsupported",
    "OrderMismatch",
    "NumericalFailure",
    "InfeasibleSample",
    "UnresolvedParameter",
    "EndpointRoot",
    "QuadratureNonConvergence",
    "SpectralIllConditioned",
]
