"""Formal pseudo-differential symbols over the differential polynomial ring.

A symbol is a finite sum over integer orders k of a_k(u) * xi**k, with each
a_k a :class:`~qlax.diffpoly.DiffPoly`.  Composition follows the symbol rule

    sigma(A o B) = sum_{j >= 0} (1/j!) d_xi^j sigma(A) * D_x^j sigma(B)

where d_xi^j xi**k = k(k-1)...(k-j+1) xi**(k-j).  The falling factorial is
computed in exact integers and is valid for negative k as well, which is
what makes xi**(-1) symbols compose correctly.

Composing genuinely pseudo-differential symbols (negative orders against
nonconstant coefficients) produces infinitely many orders.  Instead of
expanding silently, a symbol carries a precision ``floor``: ``None`` means
exact (every coefficient is known), an integer f means coefficients of
order < f are unknown.  Requesting data below the floor raises
:class:`~qlax.errors.PrecisionExhausted`, so truncation loss is loud.

Symbols with floor ``None`` and only nonnegative orders are ordinary
differential operators and form a subalgebra on which everything stays
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Tuple

from .algebra import Algebra, rational
from .diffpoly import DiffPoly, mono_mul
from .errors import PrecisionExhausted


@dataclass(frozen=True)
class PsdoSymbol:
    """A formal symbol: ordered (order, coefficient) terms plus a floor.

    ``terms`` is sorted by descending order and never stores zero
    coefficients or orders below the floor, so equality is structural.
    """

    terms: Tuple[Tuple[int, DiffPoly], ...]
    floor: Optional[int] = None

    @staticmethod
    def of(
        items: Mapping[int, DiffPoly] | Iterable[Tuple[int, DiffPoly]],
        floor: Optional[int] = None,
    ) -> "PsdoSymbol":
        merged: dict[int, DiffPoly] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for k, dp in pairs:
            merged[k] = merged.get(k, DiffPoly.zero()) + dp
        cleaned = [
            (k, dp)
            for k, dp in merged.items()
            if not dp.is_zero() and (floor is None or k >= floor)
        ]
        cleaned.sort(key=lambda t: t[0], reverse=True)
        return PsdoSymbol(tuple(cleaned), floor)

    @staticmethod
    def zero() -> "PsdoSymbol":
        return PsdoSymbol((), None)

    @staticmethod
    def one() -> "PsdoSymbol":
        return PsdoSymbol.const(1)

    @staticmethod
    def const(c: int | str | Fraction) -> "PsdoSymbol":
        dp = DiffPoly.const(c)
        return PsdoSymbol(((0, dp),) if not dp.is_zero() else (), None)

    @staticmethod
    def xi(k: int = 1, c: int | str | Fraction = 1) -> "PsdoSymbol":
        """The monomial c * xi**k.  Negative k is allowed."""
        dp = DiffPoly.const(c)
        return PsdoSymbol(((k, dp),) if not dp.is_zero() else (), None)

    @staticmethod
    def from_dp(dp: DiffPoly) -> "PsdoSymbol":
        """A multiplication operator (order 0)."""
        return PsdoSymbol(((0, dp),) if not dp.is_zero() else (), None)

    def algebra(self) -> "PsdoAlgebra":
        return PsdoAlgebra()

    # -- structure ----------------------------------------------------

    def coeff(self, k: int) -> DiffPoly:
        if self.floor is not None and k < self.floor:
            raise PrecisionExhausted(
                f"coefficient of order {k} lies below the precision floor {self.floor}"
            )
        for order, dp in self.terms:
            if order == k:
                return dp
        return DiffPoly.zero()

    def order(self) -> int | float:
        """Largest order with a nonzero coefficient; -inf for zero."""
        return self.terms[0][0] if self.terms else -math.inf

    def is_zero(self) -> bool:
        return not self.terms and self.floor is None

    def is_exact(self) -> bool:
        return self.floor is None

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _combine_floor(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return max(a, b)

    def __add__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        fl = self._combine_floor(self.floor, other.floor)
        return PsdoSymbol.of(list(self.terms) + list(other.terms), fl)

    def __neg__(self) -> "PsdoSymbol":
        return PsdoSymbol(tuple((k, -dp) for k, dp in self.terms), self.floor)

    def __sub__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        return self + (-other)

    def __mul__(self, other: "PsdoSymbol") -> "PsdoSymbol":
        return compose(self, other)

    def __pow__(self, n: int) -> "PsdoSymbol":
        if n < 0:
            raise ValueError("negative operator powers are not defined")
        acc = PsdoSymbol.one()
        for _ in range(n):
            acc = compose(acc, self)
        return acc

    def scale(self, c: Fraction) -> "PsdoSymbol":
        c = rational(c)
        if c == 0:
            return PsdoSymbol((), self.floor)
        return PsdoSymbol(tuple((k, dp.scale(c)) for k, dp in self.terms), self.floor)

    def max_abs_coeff(self) -> Fraction:
        return max((dp.max_abs_coeff() for _, dp in self.terms), default=Fraction(0))

    # -- text / JSON ----------------------------------------------------

    def __str__(self) -> str:
        from . import expr

        return expr.render_operator(self)

    def to_json(self) -> dict:
        return {
            "terms": [{"order": k, "coeff": dp.text()} for k, dp in self.terms],
            "floor": "exact" if self.floor is None else self.floor,
        }


_PS_ZERO = PsdoSymbol((), None)
_PS_ONE = PsdoSymbol(((0, DiffPoly.one()),), None)


@dataclass(frozen=True)
class PsdoAlgebra(Algebra):
    @property
    def zero(self) -> PsdoSymbol:
        return _PS_ZERO

    @property
    def one(self) -> PsdoSymbol:
        return _PS_ONE

    def is_zero(self, a: PsdoSymbol) -> bool:
        return not a.terms and a.floor is None


def compose(a: PsdoSymbol, b: PsdoSymbol, floor: Optional[int] = None) -> PsdoSymbol:
    """Symbol composition sigma(A o B).

    The result is exact whenever the expansion is finite: A a differential
    operator, or every coefficient of B killed by finitely many D_x (i.e.
    constant).  When A has negative orders against nonconstant coefficients
    of B the expansion has infinitely many orders; then a working ``floor``
    must be supplied (orders >= floor are computed, the rest recorded as
    unknown) or PrecisionExhausted is raised.

    If either input already carries a floor, the unknown coefficients limit
    what the result can know: unknown orders of A (< floor_A) reach up to
    floor_A - 1 + ord(B), and symmetrically for B, so the result floor is
    the tightest bound max(floor_A + ord(B), ord(A) + floor_B) intersected
    with any explicit ``floor``.
    """
    constraints = []
    if a.floor is not None and b.terms:
        constraints.append(a.floor + b.terms[0][0])
    if b.floor is not None and a.terms:
        constraints.append(a.terms[0][0] + b.floor)
    infinite = any(k < 0 for k, _ in a.terms) and any(
        not dp.is_constant() for _, dp in b.terms
    )
    if constraints:
        if floor is not None:
            constraints.append(floor)
        result_floor: Optional[int] = max(constraints)
    elif infinite:
        if floor is None:
            raise PrecisionExhausted(
                "composition has infinitely many orders; pass a working floor"
            )
        result_floor = floor
    else:
        result_floor = None

    # Accumulate raw monomial tables per output order and canonicalize once
    # at the end; building a DiffPoly per contribution dominates otherwise.
    # The D_x chains of the right factor are shared across left terms.
    out: dict[int, dict] = {}
    for m, bm in b.terms:
        chain = [bm]
        for k, ak in a.terms:
            j = 0
            cj = Fraction(1)  # k(k-1)...(k-j+1) / j!
            while True:
                n = k + m - j
                if result_floor is not None and n < result_floor:
                    break
                bj = chain[j]
                table = out.setdefault(n, {})
                for ma, ca in ak.terms:
                    cac = ca * cj
                    for mb, cb in bj.terms:
                        mono = mono_mul(ma, mb)
                        prev = table.get(mono)
                        value = cac * cb
                        table[mono] = value if prev is None else prev + value
                if k >= 0 and j >= k:
                    break
                j += 1
                cj *= Fraction(k - j + 1, j)
                if j == len(chain):
                    chain.append(chain[-1].dx())
                if chain[j].is_zero():
                    break
    return PsdoSymbol.of(
        {n: DiffPoly.of(table) for n, table in out.items()}, result_floor
    )


def commutator(a: PsdoSymbol, b: PsdoSymbol) -> PsdoSymbol:
    """[A, B] = A o B - B o A."""
    return compose(a, b) - compose(b, a)


class KdvPair(NamedTuple):
    L: PsdoSymbol
    P: PsdoSymbol


def kdv_pair() -> KdvPair:
    """The KdV operators: L of order 2 and P of order 3.

    P is stored pre-expanded as -4*d^3 + 6*u*d + 3*u_1; a test checks that
    this agrees with composing -4*d^3 + 3*(d*u + u*d) symbol by symbol.
    """
    u = DiffPoly.u(0)
    l_op = PsdoSymbol.of({2: DiffPoly.const(-1), 0: u})
    p_op = PsdoSymbol.of(
        {3: DiffPoly.const(-4), 1: u.scale(Fraction(6)), 0: u.dx().scale(Fraction(3))}
    )
    return KdvPair(l_op, p_op)


def order(a: PsdoSymbol) -> int | float:
    return a.order()
