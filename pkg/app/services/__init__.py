# Service Layer

from app.services.curves import CURVES, cuspform_coeffs, get_curve
from app.services.lseries import compute_lvalue, lprime0
from app.services.qexpr import eval_expr, expand, parse, to_text
from app.services.verify_service import REGISTRY, all_passed, run_all, run_all_async, run_check

__all__ = [
    "CURVES",
    "cuspform_coeffs",
    "get_curve",
    "compute_lvalue",
    "lprime0",
    "eval_expr",
    "expand",
    "parse",
    "to_text",
    "REGISTRY",
    "all_passed",
    "run_all",
    "run_all_async",
    "run_check",
]
