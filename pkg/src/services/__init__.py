"""服務層套件"""

from .sdp_solver import SdpSolver
from .certifier import CertificationRun, CertifierService
from .quadrature import MomentIntegrator, MomentTable
from .derivative_evaluator import ENGINE, SPECTRAL, DerivativeEvaluator, DerivativeSeries
from .sign_scanner import SignScanner, make_t_grid
from .export_service import ExportService

__all__ = [
    "SdpSolver",
    "CertificationRun",
    "CertifierService",
    "MomentIntegrator",
    "MomentTable",
    "ENGINE",
    "SPECTRAL",
    "DerivativeEvaluator",
    "DerivativeSeries",
    "SignScanner",
    "make_t_grid",
    "ExportService",
]
