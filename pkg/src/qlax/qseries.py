"""Truncated formal power series in the deformation parameter q.

A :class:`QSeries` over an algebra A holds coefficients c_0..c_N of q^0..q^N
and computes modulo q^(N+1).  The truncation order N is part of the value:
all N+1 slots are stored (zeros included) and combining series with
different N raises :class:`~qlax.errors.TruncationMismatch` instead of
silently re-truncating.

The grading is what makes the group theory finite: a product of series with
valuations n and m has valuation at least n + m, so for any s with
valuation >= 1 the sums below terminate after N steps and are exact:

    exp(s)  = sum_{i<=N} s**i / i!          (c_0 becomes 1)
    log(s)  = sum_{1<=i<=N} (-1)**(i+1) (s-1)**i / i   (needs c_0 = 1)
    s**-1   = sum_{i<=N} (1-s)**i            (needs c_0 = 1)

exp and log are mutually inverse bijections between {val >= 1} and
{c_0 = 1} at every truncation order.  Elements with an invertible degree-0
part g are inverted through the unipotent case, given g**-1 by the caller.

Coefficients must form a Q-algebra (every backend here does): the i! and
1/i denominators are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, Optional

from .algebra import Algebra, rational
from .errors import NotAUnit, TruncationMismatch, ValuationError


@dataclass(frozen=True)
class QSeries:
    """Coefficients c_0..c_N over ``alg``; arithmetic is modulo q^(N+1)."""

    alg: Algebra
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a q-series stores at least the q^0 coefficient")

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(alg: Algebra, coeffs: Iterable[Any]) -> "QSeries":
        return QSeries(alg, tuple(coeffs))

    @staticmethod
    def zero(alg: Algebra, n: int) -> "QSeries":
        return QSeries(alg, (alg.zero,) * (n + 1))

    @staticmethod
    def one(alg: Algebra, n: int) -> "QSeries":
        return QSeries(alg, (alg.one,) + (alg.zero,) * n)

    @staticmethod
    def constant(alg: Algebra, n: int, a: Any) -> "QSeries":
        """The element a placed at q^0."""
        return QSeries(alg, (a,) + (alg.zero,) * n)

    @staticmethod
    def term(alg: Algebra, n: int, a: Any, k: int) -> "QSeries":
        """The monomial a * q^k; requires k <= n."""
        if not 0 <= k <= n:
            raise ValueError(f"q-power {k} outside truncation order {n}")
        cs = [alg.zero] * (n + 1)
        cs[k] = a
        return QSeries(alg, tuple(cs))

    def algebra(self) -> "QSeriesAlgebra":
        return QSeriesAlgebra(self.alg, self.trunc)

    # -- structure ----------------------------------------------------

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Any:
        return self.coeffs[k]

    def val(self) -> int | float:
        """q-valuation: smallest order with a nonzero coefficient,
        +inf for the zero series."""
        for k, c in enumerate(self.coeffs):
            if not self.alg.is_zero(c):
                return k
        return math.inf

    def is_zero(self) -> bool:
        return all(self.alg.is_zero(c) for c in self.coeffs)

    def _check(self, other: "QSeries") -> None:
        if self.trunc != other.trunc:
            raise TruncationMismatch(
                f"truncation orders differ: {self.trunc} vs {other.trunc}"
            )

    def truncated(self, m: int) -> "QSeries":
        """Drop coefficients above q^m (m <= N)."""
        if m > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {m}")
        return QSeries(self.alg, self.coeffs[: m + 1])

    def map_coeffs(self, f: Callable[[Any], Any], alg: Optional[Algebra] = None) -> "QSeries":
        """Apply f to every coefficient (same truncation order)."""
        return QSeries(alg or self.alg, tuple(f(c) for c in self.coeffs))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        is_zero = self.alg.is_zero
        out = tuple(
            b if is_zero(a) else (a if is_zero(b) else a + b)
            for a, b in zip(self.coeffs, other.coeffs)
        )
        return QSeries(self.alg, out)

    def __neg__(self) -> "QSeries":
        is_zero = self.alg.is_zero
        return QSeries(
            self.alg,
            tuple(c if is_zero(c) else self.alg.scale(-1, c) for c in self.coeffs),
        )

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        """Cauchy product cut at q^N; factor order preserved."""
        self._check(other)
        n = self.trunc
        is_zero = self.alg.is_zero
        out: list = [None] * (n + 1)
        for i, ci in enumerate(self.coeffs):
            if is_zero(ci):
                continue
            for j in range(n + 1 - i):
                dj = other.coeffs[j]
                if is_zero(dj):
                    continue
                prod = ci * dj
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        zero = self.alg.zero
        return QSeries(self.alg, tuple(zero if c is None else c for c in out))

    def scale(self, c: Fraction) -> "QSeries":
        c = rational(c)
        is_zero = self.alg.is_zero
        return QSeries(
            self.alg,
            tuple(x if is_zero(x) else self.alg.scale(c, x) for x in self.coeffs),
        )

    # -- the group operations ------------------------------------------

    def _accumulate_powers(self, base: "QSeries", weight: Callable[[int], Fraction]) -> "QSeries":
        # sum_i weight(i) * base**i for i = 1..N on top of self's coefficients,
        # exploiting that base**i contributes nothing below q^i.
        alg = self.alg
        is_zero = alg.is_zero
        out = list(self.coeffs)
        power = QSeries.one(alg, self.trunc)
        for i in range(1, self.trunc + 1):
            power = power * base
            w = weight(i)
            for k in range(i, self.trunc + 1):
                c = power.coeffs[k]
                if is_zero(c):
                    continue
                c = alg.scale(w, c) if w != 1 else c
                out[k] = c if is_zero(out[k]) else out[k] + c
        return QSeries(alg, tuple(out))

    def exp(self) -> "QSeries":
        """Truncated exponential; requires valuation >= 1."""
        if not self.alg.is_zero(self.coeffs[0]):
            raise ValuationError("exp needs q-valuation >= 1 (zero q^0 coefficient)")
        fact = [1]
        for i in range(1, self.trunc + 1):
            fact.append(fact[-1] * i)
        one = QSeries.one(self.alg, self.trunc)
        return one._accumulate_powers(self, lambda i: Fraction(1, fact[i]))

    def log(self) -> "QSeries":
        """Truncated logarithm; requires c_0 = 1."""
        if self.coeffs[0] != self.alg.one:
            raise ValuationError("log needs q^0 coefficient equal to 1")
        x = self - QSeries.one(self.alg, self.trunc)
        zero = QSeries.zero(self.alg, self.trunc)
        return zero._accumulate_powers(x, lambda i: Fraction((-1) ** (i + 1), i))

    def invert_unipotent(self) -> "QSeries":
        """Inverse of 1 + (valuation >= 1) by the finite geometric series."""
        if self.coeffs[0] != self.alg.one:
            raise ValuationError("unipotent inversion needs q^0 coefficient equal to 1")
        y = QSeries.one(self.alg, self.trunc) - self
        one = QSeries.one(self.alg, self.trunc)
        return one._accumulate_powers(y, lambda i: Fraction(1))

    def invert_unit(self, inv0: Any) -> "QSeries":
        """Two-sided inverse of a series whose q^0 part has inverse inv0.

        inv0 must invert c_0 on both sides in A; the rest reduces to the
        unipotent case: (inv0 * s) is unipotent and
        s^-1 = invert_unipotent(inv0 * s) * inv0.
        """
        c0 = self.coeffs[0]
        if inv0 * c0 != self.alg.one or c0 * inv0 != self.alg.one:
            raise NotAUnit("inv0 does not invert the q^0 coefficient on both sides")
        inv0_series = QSeries.constant(self.alg, self.trunc, inv0)
        return (inv0_series * self).invert_unipotent() * inv0_series

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if self.alg.is_zero(c):
                continue
            qpow = "" if k == 0 else ("*q" if k == 1 else f"*q^{k}")
            parts.append(f"({c}){qpow}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QSeriesAlgebra(Algebra):
    """q-series of a fixed truncation order over a base algebra."""

    base: Algebra
    n: int

    @cached_property
    def zero(self) -> QSeries:
        return QSeries.zero(self.base, self.n)

    @cached_property
    def one(self) -> QSeries:
        return QSeries.one(self.base, self.n)

    def is_zero(self, a: QSeries) -> bool:
        return a.is_zero()
