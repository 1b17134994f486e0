"""Exact scalars, the coefficient-algebra contract, and polynomials in t.

Every scalar in the kernel is a ``fractions.Fraction``: arbitrary precision,
stored in lowest terms with a positive denominator, so nothing ever rounds.

An :class:`Algebra` value describes a unital associative algebra over the
rationals.  It only has to supply ``zero``, ``one`` and rational scaling;
the element values themselves implement ``+``, unary ``-``, ``*`` (possibly
noncommutative) and structural ``==`` on canonical forms.  The generic
containers defined here and elsewhere (:class:`TPoly`, ``QSeries``, ``BiOp``)
work over any such algebra and are themselves algebras, so they nest freely.

Time paths are exact polynomials in t.  That keeps every time derivative and
every integral from 0 to t exact, which is what the order-by-order identities
downstream rely on.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def rational(value: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction, or a string like ``-3/7`` to a Fraction.

    Floats are rejected: they would smuggle rounding into the kernel.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"denominator must be positive: {value!r}") from None
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


class Algebra(ABC):
    """Descriptor of a coefficient algebra.

    Algebra descriptors are small immutable values (safe to compare, hash and
    share); all the arithmetic lives on the elements.
    """

    @property
    @abstractmethod
    def zero(self) -> Any:
        """The canonical zero element."""

    @property
    @abstractmethod
    def one(self) -> Any:
        """The canonical multiplicative identity."""

    def scale(self, c: int | Fraction, a: Any) -> Any:
        """Multiply an element by an exact rational."""
        return a.scale(rational(c))

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def from_rational(self, c: int | str | Fraction) -> Any:
        """Embed a rational as c * one."""
        return self.scale(rational(c), self.one)


@dataclass(frozen=True)
class RationalAlgebra(Algebra):
    """The rationals themselves, as the simplest (commutative) backend."""

    @property
    def zero(self) -> Fraction:
        return _F0

    @property
    def one(self) -> Fraction:
        return _F1

    def scale(self, c: int | Fraction, a: Fraction) -> Fraction:
        return rational(c) * a

    def is_zero(self, a: Fraction) -> bool:
        return a == 0


def algebra_of(x: Any) -> Algebra:
    """Recover the algebra descriptor an element belongs to."""
    if isinstance(x, Fraction):
        return RationalAlgebra()
    algebra = getattr(x, "algebra", None)
    if algebra is None:
        raise TypeError(f"{type(x).__name__} does not expose its algebra")
    return algebra()


@dataclass(frozen=True)
class TPoly:
    """Polynomial in the time variable t with coefficients in ``alg``.

    ``coeffs[k]`` is the coefficient of t**k.  Trailing zero coefficients are
    stripped on construction, so the zero polynomial has an empty tuple and
    structural equality coincides with mathematical equality whenever the
    coefficient algebra is canonical.
    """

    alg: Algebra
    coeffs: tuple

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and self.alg.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(alg: Algebra, coeffs: Iterable[Any]) -> "TPoly":
        return TPoly(alg, tuple(coeffs))

    @staticmethod
    def const(alg: Algebra, a: Any) -> "TPoly":
        return TPoly(alg, (a,))

    @staticmethod
    def t_power(alg: Algebra, a: Any, k: int) -> "TPoly":
        """The monomial a * t**k."""
        if k < 0:
            raise ValueError("t-exponent must be >= 0")
        return TPoly(alg, (alg.zero,) * k + (a,))

    def algebra(self) -> "TPolyAlgebra":
        return TPolyAlgebra(self.alg)

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """t-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Any:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.alg.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "TPoly") -> "TPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        is_zero = self.alg.is_zero
        out = list(a)
        for k, c in enumerate(b):
            if is_zero(c):
                continue
            out[k] = c if is_zero(out[k]) else out[k] + c
        return TPoly(self.alg, tuple(out))

    def __neg__(self) -> "TPoly":
        is_zero = self.alg.is_zero
        return TPoly(
            self.alg,
            tuple(c if is_zero(c) else self.alg.scale(-1, c) for c in self.coeffs),
        )

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly") -> "TPoly":
        """Cauchy product; the left factor of every coefficient product
        comes from self, so noncommutative coefficients keep their order."""
        if not self.coeffs or not other.coeffs:
            return TPoly(self.alg, ())
        is_zero = self.alg.is_zero
        out: list = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if is_zero(ci):
                continue
            for j, dj in enumerate(other.coeffs):
                if is_zero(dj):
                    continue
                prod = ci * dj
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        zero = self.alg.zero
        return TPoly(self.alg, tuple(zero if c is None else c for c in out))

    def scale(self, c: Fraction) -> "TPoly":
        is_zero = self.alg.is_zero
        return TPoly(
            self.alg,
            tuple(x if is_zero(x) else self.alg.scale(c, x) for x in self.coeffs),
        )

    # -- calculus -----------------------------------------------------

    def dt(self) -> "TPoly":
        """Exact time derivative: t**k maps to k * t**(k-1)."""
        return TPoly(
            self.alg,
            tuple(self.alg.scale(k + 1, c) for k, c in enumerate(self.coeffs[1:])),
        )

    def integrate(self) -> "TPoly":
        """Exact integral from 0 to t: t**k maps to t**(k+1) / (k+1)."""
        out = [self.alg.zero]
        for k, c in enumerate(self.coeffs):
            out.append(self.alg.scale(Fraction(1, k + 1), c))
        return TPoly(self.alg, tuple(out))

    def eval_at(self, t0: int | Fraction) -> Any:
        """Horner evaluation at a rational time t0."""
        t0 = rational(t0)
        if not self.coeffs:
            return self.alg.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = self.alg.scale(t0, acc) + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if self.alg.is_zero(c):
                continue
            tpow = "" if k == 0 else ("*t" if k == 1 else f"*t^{k}")
            parts.append(f"({c}){tpow}")
        return " + ".join(parts)


@dataclass(frozen=True)
class TPolyAlgebra(Algebra):
    """The algebra of t-polynomials over a base algebra."""

    base: Algebra

    @cached_property
    def zero(self) -> TPoly:
        return TPoly(self.base, ())

    @cached_property
    def one(self) -> TPoly:
        return TPoly(self.base, (self.base.one,))

    def is_zero(self, a: TPoly) -> bool:
        return not a.coeffs
