"""Operator symbol calculus.

The independent oracle here composes differential operators using nothing
but the one-step rule  d o (b d^m) = b' d^m + b d^(m+1),  folded k times.
No falling factorials, no symbol formula: if the two agree on random
operators, the symbol product is doing Leibniz correctly.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from qlax import (
    DiffPoly,
    PrecisionExhausted,
    PsdoSymbol,
    commutator,
    compose,
    kdv_pair,
)

from conftest import diffops, rand_diffop, int_stream, rint

U = DiffPoly.u(0)
U1 = DiffPoly.u(1)
U2 = DiffPoly.u(2)
U3 = DiffPoly.u(3)
D = PsdoSymbol.xi(1)


# -- independent composition model ------------------------------------------

def _acc(table: dict, order: int, dp: DiffPoly) -> None:
    table[order] = table.get(order, DiffPoly.zero()) + dp


def model_compose(a: PsdoSymbol, b: PsdoSymbol) -> PsdoSymbol:
    """Compose differential operators by repeated first-order Leibniz."""
    assert a.floor is None and b.floor is None
    assert all(k >= 0 for k, _ in a.terms) and all(k >= 0 for k, _ in b.terms)
    out: dict[int, DiffPoly] = {}
    for k, ak in a.terms:
        cur = {m: dp for m, dp in b.terms}
        for _ in range(k):
            nxt: dict[int, DiffPoly] = {}
            for m, dp in cur.items():
                _acc(nxt, m, dp.dx())
                _acc(nxt, m + 1, dp)
            cur = nxt
        for m, dp in cur.items():
            _acc(out, m, ak * dp)
    return PsdoSymbol.of(out)


def test_model_agrees_on_seeded_operators():
    stream = int_stream(7)
    for _ in range(40):
        a = rand_diffop(stream)
        b = rand_diffop(stream)
        assert compose(a, b) == model_compose(a, b)


# -- compose ----------------------------------------------------------------

def test_compose_leibniz_example():
    assert compose(D, PsdoSymbol.from_dp(U)) == PsdoSymbol.of({1: U, 0: U1})


def test_compose_identity():
    stream = int_stream(11)
    for _ in range(10):
        b = rand_diffop(stream)
        assert compose(PsdoSymbol.one(), b) == b
        assert compose(b, PsdoSymbol.one()) == b


def test_compose_second_order():
    # oracle: expanding the second derivative of a product by hand gives
    # u*f'' + 2*u_1*f' + u_2*f
    expected = PsdoSymbol.of({2: U, 1: U1.scale(2), 0: U2})
    assert compose(PsdoSymbol.xi(2), PsdoSymbol.from_dp(U)) == expected
    assert model_compose(PsdoSymbol.xi(2), PsdoSymbol.from_dp(U)) == expected


@settings(max_examples=25, deadline=None)
@given(diffops(), diffops(), diffops())
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=40, deadline=None)
@given(diffops(), diffops())
def test_order_subadditive(a, b):
    prod = compose(a, b)
    assert prod.order() <= a.order() + b.order()
    if a.terms and b.terms:
        # leading coefficients live in an integral domain, so the top
        # order is always realized
        assert prod.order() == a.order() + b.order()


@settings(max_examples=40, deadline=None)
@given(diffops(), diffops())
def test_commutator_drops_order(a, b):
    if not a.terms or not b.terms:
        return
    assert commutator(a, b).order() <= a.order() + b.order() - 1


@settings(max_examples=15, deadline=None)
@given(diffops(max_order=2), diffops(max_order=2), diffops(max_order=2))
def test_jacobi_identity(a, b, c):
    lhs = (
        commutator(a, commutator(b, c))
        + commutator(b, commutator(c, a))
        + commutator(c, commutator(a, b))
    )
    assert lhs.is_zero()


def test_commutator_examples():
    stream = int_stream(3)
    a = rand_diffop(stream)
    assert commutator(a, a).is_zero()
    assert commutator(D, PsdoSymbol.from_dp(U)) == PsdoSymbol.from_dp(U1)


# -- the KdV pair -------------------------------------------------------------

def test_kdv_pair_shapes():
    l_op, p_op = kdv_pair()
    assert l_op.order() == 2
    assert l_op.coeff(2) == DiffPoly.const(-1)
    assert l_op.coeff(0) == U
    assert p_op.order() == 3


def test_kdv_p_matches_unexpanded_form():
    _, p_op = kdv_pair()
    built = PsdoSymbol.xi(3).scale(Fraction(-4)) + (
        compose(D, PsdoSymbol.from_dp(U)) + compose(PsdoSymbol.from_dp(U), D)
    ).scale(Fraction(3))
    assert built == p_op


def test_kdv_flow_identity():
    l_op, p_op = kdv_pair()
    rhs = PsdoSymbol.from_dp((U * U1).scale(6) - U3)
    assert commutator(p_op, l_op) == rhs
    # cross-check through the independent first-order model
    model = model_compose(p_op, l_op) - model_compose(l_op, p_op)
    assert model == rhs


# -- order bookkeeping ---------------------------------------------------------

def test_order_examples():
    assert PsdoSymbol.zero().order() == -math.inf
    assert kdv_pair().L.order() == 2
    assert PsdoSymbol.from_dp(U).order() == 0


# -- precision floors -----------------------------------------------------------

def test_negative_order_times_constant_is_exact():
    assert compose(PsdoSymbol.xi(-1), PsdoSymbol.xi(1)) == PsdoSymbol.one()
    assert compose(PsdoSymbol.xi(-2), PsdoSymbol.const(3)) == PsdoSymbol.xi(-2, 3)
    assert compose(PsdoSymbol.one(), PsdoSymbol.xi(-1)) == PsdoSymbol.xi(-1)
    trunc = compose(PsdoSymbol.xi(-1), PsdoSymbol.from_dp(U), floor=-2)
    assert compose(trunc, PsdoSymbol.one()) == trunc
    assert compose(PsdoSymbol.one(), trunc) == trunc


def test_infinite_expansion_needs_floor():
    with pytest.raises(PrecisionExhausted):
        compose(PsdoSymbol.xi(-1), PsdoSymbol.from_dp(U))


def test_truncated_expansion_values():
    # 1/d o u expands as u/d - u_1/d^2 + u_2/d^3 - ...
    got = compose(PsdoSymbol.xi(-1), PsdoSymbol.from_dp(U), floor=-3)
    assert got.floor == -3
    assert got.coeff(-1) == U
    assert got.coeff(-2) == -U1
    assert got.coeff(-3) == U2
    with pytest.raises(PrecisionExhausted):
        got.coeff(-4)


def test_floor_propagates_through_compose():
    trunc = compose(PsdoSymbol.xi(-1), PsdoSymbol.from_dp(U), floor=-2)
    lifted = compose(PsdoSymbol.xi(2), trunc)
    # unknown orders of the right factor (< -2) reach up to order(A) - 3,
    # so the result knows orders >= 2 + (-2) = 0
    assert lifted.floor == 0
    deep = compose(trunc, PsdoSymbol.xi(2))
    assert deep.floor == -2 + 2
    exact = compose(PsdoSymbol.xi(2), PsdoSymbol.from_dp(U))
    assert exact.floor is None


def test_floor_combines_under_addition():
    trunc = compose(PsdoSymbol.xi(-1), PsdoSymbol.from_dp(U), floor=-2)
    mixed = trunc + PsdoSymbol.xi(-5)  # the exact deep term is swallowed
    assert mixed.floor == -2
    assert all(k >= -2 for k, _ in mixed.terms)
    assert (-trunc).floor == -2
    assert trunc.scale(Fraction(1, 2)).floor == -2


def test_exact_subalgebra_stays_exact():
    stream = int_stream(19)
    for _ in range(20):
        a, b = rand_diffop(stream), rand_diffop(stream)
        prod = compose(a, b)
        assert prod.floor is None
        assert all(k >= 0 for k, _ in prod.terms)


def test_floors_never_store_wrong_coefficients():
    """Everything a floored composition stores must agree with the exact
    composition of the untruncated inputs, including when both sides carry
    floors."""
    stream = int_stream(37)
    for _ in range(25):
        a = rand_diffop(stream)
        b = rand_diffop(stream)
        if not a.terms or not b.terms:
            continue
        exact = compose(a, b)
        # nonpositive floors keep every stored order of a differential operator
        fa = rint(stream, -3, 0)
        fb = rint(stream, -3, 0)
        a_cut = PsdoSymbol.of(a.terms, floor=fa)
        b_cut = PsdoSymbol.of(b.terms, floor=fb)
        got = compose(a_cut, b_cut)
        assert got.floor == max(fa + b.terms[0][0], a.terms[0][0] + fb)
        for k, dp in got.terms:
            assert dp == exact.coeff(k)
