"""Inner derivations, conjugation operators, and symmetry transport.

A :class:`BiOp` over an algebra A is a finite sum of (left, right) pairs
denoting the linear map X -> sum_i left_i * X * right_i.  Composition is
(a, b) o (c, d) = (a*c, d*b) extended bilinearly, the identity is the
single pair (1, 1), and ad(p) = (p, 1) + (-1, p) is the inner derivation
X -> pX - Xp.

Tensor sums of pairs have no canonical form in general: a relation like
(a, r) + (b, r) = (a + b, r) is only visible against a basis of A.  BiOps
therefore get structural simplification only (pairs sharing a left or a
right factor are merged, zero pairs pruned), and every meaningful equality
statement about them is extensional: apply both sides to a probe set and
compare in A, where equality is canonical.  ``default_probes`` supplies
the standard probe sets and callers may extend them.

Symmetries of the deformed flow obey the same kind of equation as the flow
itself, with ad(Pq) in place of Pq, inside the algebra of t-polynomial
BiOps.  The whole section is therefore a thin reuse of ``laxflow`` over
the BiOp backend: ``exp_ad`` is the time-ordered exponential of the lifted
path (the parallel transport of the connection d/dt + ad_Pq along time),
``transport`` conjugates an initial symmetry by it, and both residual maps
recompute their defining equations from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from .algebra import Algebra, TPoly, TPolyAlgebra, algebra_of, rational
from .diffpoly import DiffPoly
from .errors import TruncationMismatch
from .laxflow import LaxProblem, lax_residual, lax_solve, texp
from .matrix import MatrixAlgebra, RatMatrix
from .psdo import PsdoAlgebra, PsdoSymbol
from .qseries import QSeries


@dataclass(frozen=True)
class BiOp:
    """A finite sum of left/right multiplication pairs over ``alg``."""

    alg: Algebra
    terms: Tuple[Tuple[Any, Any], ...]

    @staticmethod
    def of(alg: Algebra, pairs: Iterable[Tuple[Any, Any]]) -> "BiOp":
        return BiOp(alg, _simplify(alg, tuple(pairs)))

    @staticmethod
    def identity(alg: Algebra) -> "BiOp":
        return BiOp(alg, ((alg.one, alg.one),))

    @staticmethod
    def zero(alg: Algebra) -> "BiOp":
        return BiOp(alg, ())

    def algebra(self) -> "BiOpAlgebra":
        return BiOpAlgebra(self.alg)

    # -- the action -----------------------------------------------------

    def apply(self, x: Any) -> Any:
        """The linear map this operator denotes, evaluated at x."""
        acc = self.alg.zero
        for left, right in self.terms:
            acc = acc + left * x * right
        return acc

    def is_zero(self) -> bool:
        return not self.terms

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "BiOp") -> "BiOp":
        return BiOp.of(self.alg, self.terms + other.terms)

    def __neg__(self) -> "BiOp":
        return BiOp(self.alg, tuple((self.alg.scale(-1, l), r) for l, r in self.terms))

    def __sub__(self, other: "BiOp") -> "BiOp":
        return self + (-other)

    def __mul__(self, other: "BiOp") -> "BiOp":
        """Composition of the denoted maps: (a,b) o (c,d) = (a*c, d*b)."""
        pairs = []
        for a, b in self.terms:
            for c, d in other.terms:
                pairs.append((a * c, d * b))
        return BiOp.of(self.alg, pairs)

    def scale(self, c: Fraction) -> "BiOp":
        c = rational(c)
        if c == 0:
            return BiOp(self.alg, ())
        return BiOp(self.alg, tuple((self.alg.scale(c, l), r) for l, r in self.terms))

    def extensionally_equal(self, other: "BiOp", probes: Sequence[Any]) -> bool:
        """Equality of the denoted maps on a probe set."""
        return all(self.apply(x) == other.apply(x) for x in probes)

    def to_json(self) -> list:
        from .render import json_value

        return [{"left": json_value(l), "right": json_value(r)} for l, r in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({l})*X*({r})" for l, r in self.terms)


def _simplify(alg: Algebra, pairs: Tuple[Tuple[Any, Any], ...]) -> Tuple[Tuple[Any, Any], ...]:
    # Merge pairs sharing a left factor, then pairs sharing a right factor;
    # prune pairs with a zero side.  Purely structural compression: it never
    # changes the denoted map and keeps term lists from ballooning.
    by_left: dict[Any, Any] = {}
    for left, right in pairs:
        if alg.is_zero(left) or alg.is_zero(right):
            continue
        if left in by_left:
            by_left[left] = by_left[left] + right
        else:
            by_left[left] = right
    by_right: dict[Any, Any] = {}
    for left, right in by_left.items():
        if alg.is_zero(right):
            continue
        if right in by_right:
            by_right[right] = by_right[right] + left
        else:
            by_right[right] = left
    return tuple((left, right) for right, left in by_right.items() if not alg.is_zero(left))


@dataclass(frozen=True)
class BiOpAlgebra(Algebra):
    base: Algebra

    @cached_property
    def zero(self) -> BiOp:
        return BiOp(self.base, ())

    @cached_property
    def one(self) -> BiOp:
        return BiOp.identity(self.base)

    def is_zero(self, a: BiOp) -> bool:
        return not a.terms


def ad(p: Any, alg: Optional[Algebra] = None) -> BiOp:
    """The inner derivation X -> p*X - X*p as a two-term BiOp."""
    alg = alg or algebra_of(p)
    return BiOp.of(alg, ((p, alg.one), (alg.scale(-1, alg.one), p)))


def lift_ad(pq: QSeries) -> QSeries:
    """Map every A-coefficient of a q-series of t-polynomials to its inner
    derivation, giving a q-series of t-polynomials of BiOps."""
    talg = pq.alg
    if not isinstance(talg, TPolyAlgebra):
        raise TypeError("lift_ad needs a q-series over t-polynomials")
    base = talg.base
    balg = BiOpAlgebra(base)

    def lift(tp: TPoly) -> TPoly:
        return TPoly(balg, tuple(ad(c, base) for c in tp.coeffs))

    return pq.map_coeffs(lift, alg=TPolyAlgebra(balg))


def exp_ad(pq: QSeries) -> QSeries:
    """Time-ordered exponential of ad(Pq): the parallel-transport operator.

    Applied to any X it agrees with W * X * W^-1 for W = texp(pq), which is
    the Ad-exp identity the tests pin down.
    """
    return texp(lift_ad(pq))


def transport(s0: BiOp, pq: QSeries) -> QSeries:
    """Carry an initial symmetry along time: exp_ad(Pq) o S0 o exp_ad(Pq)^-1.

    The result is the unique solution of dS/dt = [ad(Pq), S] with S(0) = s0,
    modulo q^(N+1).
    """
    e = exp_ad(pq)
    balg = e.alg
    s0_series = QSeries.constant(balg, pq.trunc, TPoly.const(balg.base, s0))
    return e * s0_series * e.invert_unipotent()


def symmetry3_residual(sq: QSeries, pq: QSeries) -> QSeries:
    """dS/dt - [ad(Pq), S]: the defining equation of transported symmetries,
    recomputed from scratch.  BiOp-valued; check it against probes."""
    return lax_residual(sq, lift_ad(pq))


def apply_series(sq: QSeries, xq: QSeries) -> QSeries:
    """Apply a q/t-series of BiOps to a q/t-series of A-elements,
    bilinearly in both gradings."""
    if sq.trunc != xq.trunc:
        raise TruncationMismatch(
            f"truncation orders differ: {sq.trunc} vs {xq.trunc}"
        )
    s_talg = sq.alg
    x_talg = xq.alg
    if not isinstance(s_talg, TPolyAlgebra) or not isinstance(x_talg, TPolyAlgebra):
        raise TypeError("apply_series needs q-series over t-polynomials")
    base = x_talg.base
    n = sq.trunc
    out = [x_talg.zero] * (n + 1)
    for i, st in enumerate(sq.coeffs):
        if st.is_zero():
            continue
        for j in range(n + 1 - i):
            xt = xq.coeffs[j]
            if xt.is_zero():
                continue
            out[i + j] = out[i + j] + _apply_tpoly(base, st, xt)
    return QSeries(x_talg, tuple(out))


def _apply_tpoly(base: Algebra, st: TPoly, xt: TPoly) -> TPoly:
    # t-convolution where "multiplication" is the BiOp action on A.
    out = [base.zero] * (len(st.coeffs) + len(xt.coeffs) - 1) if st.coeffs and xt.coeffs else []
    for a, bop in enumerate(st.coeffs):
        if bop.is_zero():
            continue
        for b, x in enumerate(xt.coeffs):
            if base.is_zero(x):
                continue
            out[a + b] = out[a + b] + bop.apply(x)
    return TPoly(base, tuple(out))


def symmetry2_residual(sq: QSeries, pq: QSeries, lq: QSeries) -> QSeries:
    """The weaker residual (dS/dt - [ad(Pq), S]) applied to Lq.

    Vanishing here is necessary and sufficient for S to be a symmetry in
    the restricted linear sense; it is strictly weaker than the BiOp-level
    equation, since a nonzero operator can still annihilate Lq.
    """
    return apply_series(symmetry3_residual(sq, pq), lq)


def apply_to_probe(sq: QSeries, x: Any) -> QSeries:
    """Apply every BiOp coefficient of a q/t-series to a fixed probe."""
    talg = sq.alg
    if not isinstance(talg, TPolyAlgebra) or not isinstance(talg.base, BiOpAlgebra):
        raise TypeError("apply_to_probe needs a q/t-series of BiOps")
    base = talg.base.base
    return sq.map_coeffs(
        lambda tp: TPoly(base, tuple(b.apply(x) for b in tp.coeffs)),
        alg=TPolyAlgebra(base),
    )


def residual_vanishes(residual: QSeries, probes: Sequence[Any]) -> bool:
    """Extensional zero test for a BiOp-valued residual series."""
    return all(apply_to_probe(residual, x).is_zero() for x in probes)


def transported_solution_check(s0: BiOp, prob: LaxProblem) -> bool:
    """Transported symmetries map solutions to solutions.

    Checks that M = S(t).Lq(t) both satisfies the deformed flow equation
    and equals the conjugation solution started at S0(L0).
    """
    sol = lax_solve(prob)
    sq = transport(s0, sol.pq)
    mq = apply_series(sq, sol.lq)
    if not lax_residual(mq, sol.pq).is_zero():
        return False
    expected = lax_solve(LaxProblem(p=prob.p, l0=s0.apply(prob.l0), n=prob.n))
    return mq == expected.lq


def default_probes(alg: Algebra) -> List[Any]:
    """The standard probe set used for extensional BiOp checks.

    Matrices: all n*n matrix units (a spanning set, so extensional equality
    is true equality).  Operator symbols: a small cross-section of orders
    and coefficients; symmetry commands extend it with the problem's own
    L0 and P coefficients.
    """
    if isinstance(alg, MatrixAlgebra):
        probes = []
        for i in range(alg.n):
            for j in range(alg.n):
                probes.append(
                    RatMatrix(
                        tuple(
                            tuple(
                                Fraction(1) if (r, c) == (i, j) else Fraction(0)
                                for c in range(alg.n)
                            )
                            for r in range(alg.n)
                        )
                    )
                )
        return probes
    if isinstance(alg, PsdoAlgebra):
        u = DiffPoly.u(0)
        return [
            PsdoSymbol.one(),
            PsdoSymbol.from_dp(u),
            PsdoSymbol.xi(1),
            PsdoSymbol.of({1: u}),
            PsdoSymbol.xi(2),
        ]
    raise TypeError(f"no default probe set for {type(alg).__name__}")
