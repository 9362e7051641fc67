"""資料模型套件"""

from .alpha_poly import AlphaPoly
from .moment import MomentExpr, MomentSymbol, MomentTerm, RawIntegral, moment_make
from .derivative import DerivativeResult, EntropyKind
from .gram import (
    AffineConstraint,
    FeasiblePoint,
    FittedParams,
    GramBasisElement,
    GramProblem,
    Infeasible,
    SlackTerm,
    entry_name,
)
from .certificate import PolyMatrix, PolynomialEvidence, PositivityCertificate, Verdict
from .mixture import EvalPoint, MixtureDensity, QuadratureConfig
from .scan_report import ScanSeries, SignScanReport, ViolationBracket

__all__ = [
    "AlphaPoly",
    "MomentExpr",
    "MomentSymbol",
    "MomentTerm",
    "RawIntegral",
    "moment_make",
    "DerivativeResult",
    "EntropyKind",
    "AffineConstraint",
    "FeasiblePoint",
    "FittedParams",
    "GramBasisElement",
    "GramProblem",
    "Infeasible",
    "SlackTerm",
    "entry_name",
    "PolyMatrix",
    "PolynomialEvidence",
    "PositivityCertificate",
    "Verdict",
    "EvalPoint",
    "MixtureDensity",
    "QuadratureConfig",
    "ScanSeries",
    "SignScanReport",
    "ViolationBracket",
]
