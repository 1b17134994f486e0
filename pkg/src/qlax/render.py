"""JSON rendering and magnitude helpers shared by the CLI and reports.

Exact values are rendered as strings ("3/7", never floats); floats appear
only where a report explicitly formats them (the convergence study).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import TPoly
from .diffpoly import DiffPoly
from .matrix import ConvergenceReport, RatMatrix
from .psdo import PsdoSymbol
from .qseries import QSeries
from .symops import BiOp


def json_value(x: Any) -> Any:
    """Render any kernel value as JSON-compatible data."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, DiffPoly):
        return x.text()
    if isinstance(x, PsdoSymbol):
        return x.to_json()
    if isinstance(x, RatMatrix):
        return x.to_json()
    if isinstance(x, TPoly):
        return {"t_coeffs": [json_value(c) for c in x.coeffs]}
    if isinstance(x, QSeries):
        return {"trunc": x.trunc, "coeffs": [json_value(c) for c in x.coeffs]}
    if isinstance(x, BiOp):
        return x.to_json()
    raise TypeError(f"no JSON rendering for {type(x).__name__}")


def max_abs(x: Any) -> Fraction:
    """A crude exact magnitude: the largest |rational| inside the value.
    Zero exactly when the value is zero (for canonical backends)."""
    if isinstance(x, Fraction):
        return abs(x)
    if isinstance(x, DiffPoly):
        return x.max_abs_coeff()
    if isinstance(x, PsdoSymbol):
        return x.max_abs_coeff()
    if isinstance(x, RatMatrix):
        return x.max_abs()
    if isinstance(x, TPoly):
        return max((max_abs(c) for c in x.coeffs), default=Fraction(0))
    if isinstance(x, QSeries):
        return max((max_abs(c) for c in x.coeffs), default=Fraction(0))
    if isinstance(x, BiOp):
        return max(
            (max(max_abs(l), max_abs(r)) for l, r in x.terms), default=Fraction(0)
        )
    raise TypeError(f"no magnitude for {type(x).__name__}")


def residual_report(residual: QSeries, lossy: bool = False) -> dict:
    """Per q-order, per t-degree magnitudes of a residual series."""
    orders = []
    for k, tp in enumerate(residual.coeffs):
        norms = [str(max_abs(c)) for c in tp.coeffs]
        orders.append({"q_order": k, "max_norm": str(max_abs(tp)), "t_norms": norms})
    return {
        "schema": "qlax/residual/1",
        "zero": residual.is_zero(),
        "lossy": lossy,
        "orders": orders,
    }


def convergence_json(report: ConvergenceReport) -> dict:
    points = []
    for p in report.points:
        points.append(
            {
                "q": str(p.q),
                "error": float(p.error),
                "ratio_to_prev": None if p.ratio_to_prev is None else float(p.ratio_to_prev),
            }
        )
    return {
        "schema": "qlax/convergence/1",
        "N": report.n,
        "refN": report.ref_n,
        "points": points,
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON text: fixed key order, two-space indent."""
    return json.dumps(obj, indent=2) + "\n"
