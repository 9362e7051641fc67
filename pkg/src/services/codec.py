"""結果物件與 JSON 之間的轉換"""

import json
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..core.bounds import EntropyBounds
from ..models import (
    AlphaPoly,
    DerivativeResult,
    EntropyKind,
    FeasiblePoint,
    FittedParams,
    Infeasible,
    MomentExpr,
    MomentSymbol,
    MomentTerm,
    PolynomialEvidence,
    PositivityCertificate,
    SignScanReport,
)


def _fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"無效的有理數: {text!r}") from e


def _float(value: Optional[float]) -> Optional[float]:
    """NaN / ±inf 轉為 null,輸出維持合法 JSON"""
    if value is None or not math.isfinite(value):
        return None
    return float(value)


# ----------------------------------------------------------------------
# 動差表示式
# ----------------------------------------------------------------------


def poly_to_json(poly: AlphaPoly) -> List[str]:
    """係數依 α 次方遞增,每個為 "num/den" """
    return [_fraction(c) for c in poly.coeffs]


def poly_from_json(data: List[str]) -> AlphaPoly:
    return AlphaPoly(tuple(_parse_fraction(c) for c in data))


def expr_to_json(expr: MomentExpr) -> Dict[str, Any]:
    """重複的符號只寫一次並帶 power"""
    terms = []
    for term in expr:
        symbols = [
            {"factors": {str(n): k for n, k in symbol.factors}, "power": power}
            for symbol, power in term.multiplicities()
        ]
        terms.append({"coeff": poly_to_json(term.coefficient), "symbols": symbols})
    return {"terms": terms}


def expr_from_json(data: Dict[str, Any]) -> MomentExpr:
    """
    由 JSON 物件還原 MomentExpr

    Raises:
        ValueError: 格式錯誤
        NonCanonical: 符號不是標準形式
    """
    try:
        terms = []
        for item in data["terms"]:
            symbols: List[MomentSymbol] = []
            for entry in item["symbols"]:
                power = int(entry.get("power", 1))
                if power < 1:
                    raise ValueError(f"power 必須 ≥ 1: {power}")
                symbol = MomentSymbol(tuple((int(n), int(k)) for n, k in entry["factors"].items()))
                symbols.extend([symbol] * power)
            terms.append(MomentTerm(poly_from_json(item["coeff"]), tuple(symbols)))
    except (KeyError, TypeError, AttributeError) as e:
        raise ValueError(f"MomentExpr JSON 格式錯誤: {e}") from e
    return MomentExpr(tuple(terms)).normalize()


def derivative_to_json(result: DerivativeResult) -> Dict[str, Any]:
    return {
        "kind": result.kind.value,
        "order": result.order,
        "normalizer_power": result.normalizer_power,
        "expr": expr_to_json(result.expr),
    }


def derivative_from_json(data: Dict[str, Any]) -> DerivativeResult:
    return DerivativeResult(
        EntropyKind.parse(data["kind"]),
        int(data["order"]),
        expr_from_json(data["expr"]),
        int(data.get("normalizer_power", 0)),
    )


# ----------------------------------------------------------------------
# 證書與參數
# ----------------------------------------------------------------------


def _evidence_to_json(evidence: PolynomialEvidence) -> Dict[str, Any]:
    return {
        "poly": poly_to_json(evidence.poly),
        "roots_in_interval": evidence.roots_in_interval,
        "midpoint_sign": evidence.midpoint_sign,
        "identically_zero": evidence.identically_zero,
    }


def certificate_to_json(cert: PositivityCertificate) -> Dict[str, Any]:
    lo, hi = cert.interval
    data: Dict[str, Any] = {
        "interval": [_fraction(lo), _fraction(hi)],
        "minors": [_evidence_to_json(e) for e in cert.minors],
        "slacks": [_evidence_to_json(e) for e in cert.slacks],
        "verdict": cert.verdict.value,
        "perturbations": [[_fraction(a), _fraction(b)] for a, b in cert.perturbations],
        "zero_rows": [i + 1 for i in cert.zero_rows],
    }
    if cert.certified_interval is not None:
        data["certified_interval"] = [_fraction(v) for v in cert.certified_interval]
    return data


def fitted_to_json(params: FittedParams) -> Dict[str, Any]:
    return {
        "fit_degree": params.fit_degree,
        "round_denominator": params.round_denominator,
        "alpha_grid": list(params.alpha_grid),
        "params": {name: poly_to_json(poly) for name, poly in params.params.items()},
    }


def fitted_from_json(data: Dict[str, Any]) -> FittedParams:
    return FittedParams(
        {name: poly_from_json(coeffs) for name, coeffs in data["params"].items()},
        int(data["fit_degree"]),
        int(data["round_denominator"]),
        tuple(float(a) for a in data.get("alpha_grid", ())),
    )


def solve_result_to_json(result) -> Dict[str, Any]:
    """FeasiblePoint 或 Infeasible"""
    if isinstance(result, FeasiblePoint):
        return {
            "alpha": result.alpha,
            "status": "feasible",
            "margin": _float(result.margin),
            "min_eigenvalue": _float(result.min_eigenvalue),
            "residual": _float(result.residual),
            "values": {k: _float(v) for k, v in result.values().items()},
        }
    if isinstance(result, Infeasible):
        return {
            "alpha": result.alpha,
            "status": "infeasible",
            "violation": _float(result.violation),
            "reason": result.reason,
        }
    raise TypeError(f"不支援的求解結果: {type(result).__name__}")


# ----------------------------------------------------------------------
# 數值結果
# ----------------------------------------------------------------------


def bounds_to_json(bounds: EntropyBounds) -> Dict[str, Any]:
    return {k: _float(v) if isinstance(v, float) else v for k, v in bounds.to_dict().items()}


def scan_report_to_json(report: SignScanReport) -> Dict[str, Any]:
    series = []
    for s in report.series:
        series.append(
            {
                "order": s.order,
                "alpha": s.alpha,
                "t_grid": list(s.t_grid),
                "values": [_float(v) for v in s.values],
                "errors": [_float(v) for v in s.errors],
                "violations": [
                    {
                        "t_lo": v.t_lo,
                        "t_hi": v.t_hi,
                        "value": _float(v.value),
                        "error": _float(v.error),
                        "spectral_value": _float(v.spectral_value),
                    }
                    for v in s.violations
                ],
                "cell_errors": [{"t": t, "error": msg} for t, msg in s.cell_errors],
            }
        )
    return {
        "kind": report.kind.value,
        "density": report.density.to_dict(),
        "summary": report.get_summary(),
        "series": series,
    }


def dumps(data: Any) -> str:
    """鍵排序後輸出,相同輸入得到相同位元組"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)
