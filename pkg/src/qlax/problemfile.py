"""Problem files: one JSON document describing a flow to solve or check.

Example (matrix backend):

    {
      "schema": "qlax/problem/1",
      "backend": "matrix",
      "L0": [["1", "0"], ["0", "-1"]],
      "P": [[0, [["0", "1"], ["0", "0"]]]],
      "N": 2,
      "S0": [[[["0", "1"], ["1", "0"]], [["0", "1"], ["1", "0"]]]]
    }

``P`` lists (t-degree, entry) pairs.  On the psdo backend entries are DSL
expressions like "-d^2 + u".  Matrix literals are arrays of arrays of
strings parsed as exact rationals, so exactness survives serialization
(plain JSON integers are accepted too; floats are not).  ``S0`` is either
the string "identity" or a list of [left, right] pairs in the backend's
literal syntax.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from .algebra import Algebra, TPoly
from .errors import ProblemFileError, QlaxError
from .laxflow import LaxProblem
from .matrix import MatrixAlgebra, RatMatrix
from .psdo import PsdoAlgebra
from .symops import BiOp

from . import expr

PROBLEM_SCHEMA = "qlax/problem/1"


@dataclass(frozen=True)
class ProblemFile:
    backend: str
    alg: Algebra
    l0: Any
    p: TPoly
    n: int
    s0: Optional[BiOp]

    def lax_problem(self) -> LaxProblem:
        try:
            return LaxProblem(p=self.p, l0=self.l0, n=self.n)
        except ValueError as e:
            raise ProblemFileError("P", str(e)) from e


def _entry_value(backend: str, raw: Any, field: str) -> Any:
    if backend == "psdo":
        if not isinstance(raw, str):
            raise ProblemFileError(field, "psdo entries are DSL expression strings")
        try:
            return expr.parse_operator(raw)
        except QlaxError as e:
            raise ProblemFileError(field, str(e)) from e
    if not isinstance(raw, list) or not raw:
        raise ProblemFileError(field, "matrix entries are arrays of arrays of rationals")
    try:
        return RatMatrix.of(raw)
    except (ValueError, TypeError) as e:
        raise ProblemFileError(field, str(e)) from e


def load_problem(doc: dict, default_n: Optional[int] = None) -> ProblemFile:
    """Validate and elaborate a problem document."""
    if not isinstance(doc, dict):
        raise ProblemFileError("$", "problem file must be a JSON object")
    backend = doc.get("backend")
    if backend not in ("psdo", "matrix"):
        raise ProblemFileError("backend", "must be \"psdo\" or \"matrix\"")

    if "L0" not in doc:
        raise ProblemFileError("L0", "missing")
    l0 = _entry_value(backend, doc["L0"], "L0")
    if backend == "psdo":
        alg: Algebra = PsdoAlgebra()
    else:
        alg = MatrixAlgebra(l0.n)

    raw_p = doc.get("P")
    if not isinstance(raw_p, list) or not raw_p:
        raise ProblemFileError("P", "must be a nonempty list of [t-degree, entry] pairs")
    seen = set()
    top = -1
    by_degree = {}
    for item in raw_p:
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], int):
            raise ProblemFileError("P", "each item must be a [t-degree, entry] pair")
        degree, raw_entry = item
        if degree < 0:
            raise ProblemFileError("P", f"negative t-degree {degree}")
        if degree in seen:
            raise ProblemFileError("P", f"duplicate t-degree {degree}")
        seen.add(degree)
        value = _entry_value(backend, raw_entry, "P")
        if backend == "matrix" and value.n != alg.n:
            raise ProblemFileError("P", f"dimension {value.n} does not match L0 ({alg.n})")
        by_degree[degree] = value
        top = max(top, degree)
    coeffs = [by_degree.get(k, alg.zero) for k in range(top + 1)]
    p = TPoly.of(alg, coeffs)

    n = doc.get("N", default_n)
    if n is None:
        raise ProblemFileError("N", "missing (set N in the file or pass --qorder)")
    if not isinstance(n, int) or n < 1:
        raise ProblemFileError("N", f"must be an integer >= 1, got {n!r}")

    s0 = None
    if "S0" in doc:
        raw_s0 = doc["S0"]
        if raw_s0 == "identity":
            s0 = BiOp.identity(alg)
        elif isinstance(raw_s0, list):
            pairs = []
            for pair in raw_s0:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ProblemFileError("S0", "must be \"identity\" or a list of [left, right] pairs")
                pairs.append(
                    (_entry_value(backend, pair[0], "S0"), _entry_value(backend, pair[1], "S0"))
                )
            s0 = BiOp.of(alg, pairs)
        else:
            raise ProblemFileError("S0", "must be \"identity\" or a list of [left, right] pairs")

    return ProblemFile(backend=backend, alg=alg, l0=l0, p=p, n=n, s0=s0)


def load_problem_file(path: str, default_n: Optional[int] = None) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ProblemFileError("$", f"invalid JSON: {e}") from e
    return load_problem(doc, default_n)


def load_probes(path: str, backend: str) -> list:
    """Extra probe elements from a JSON file: {"probes": [entry, ...]}."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise ProblemFileError("probes", f"invalid JSON: {e}") from e
    raw = doc.get("probes") if isinstance(doc, dict) else None
    if not isinstance(raw, list):
        raise ProblemFileError("probes", "file must contain a \"probes\" list")
    return [_entry_value(backend, item, "probes") for item in raw]
