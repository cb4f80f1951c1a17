import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpuv.ambient import (
    PairPoly,
    Params,
    ParamsMismatch,
    gray_inverse,
    gray_psi,
    inner_product,
    star_mul,
    tau,
    tau_lambda,
)
from zpuv.finite_field import FpPoly
from zpuv.local_ring import RElem, RPoly


@st.composite
def params(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    lam = RElem(draw(st.integers(1, p - 1)), draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1)), p)
    return Params(p, draw(st.integers(0, 4)), draw(st.integers(1, 4)), lam)


@st.composite
def words(draw, P):
    digits = draw(st.lists(st.integers(0, P.p - 1), min_size=P.n_digits, max_size=P.n_digits))
    return PairPoly.from_digits(digits, P)


@st.composite
def param_words(draw, n=2):
    P = draw(params())
    return (P, *(draw(words(P)) for _ in range(n)))


def test_params_validation():
    with pytest.raises(ValueError):
        Params(4, 1, 1)
    with pytest.raises(ValueError):
        Params(3, 1, 0)
    with pytest.raises(ValueError):
        Params(3, 1, 1, RElem(0, 1, 0, 3))
    assert Params(3, 4, 2).ambient_exponent() == 10


def test_alpha_zero_left_block_is_zero():
    P = Params(2, 0, 2)
    z = PairPoly(FpPoly([1, 1], 2), RPoly.one(2), P)
    assert z.left.is_zero()
    assert len(z.digits()) == 6


def test_mismatched_params():
    z1 = PairPoly.zero(Params(2, 1, 1))
    z2 = PairPoly.zero(Params(2, 2, 1))
    with pytest.raises(ParamsMismatch):
        z1 + z2


def test_tau_rotates_with_lambda():
    lam = RElem(1, 1, 0, 3)
    P = Params(3, 2, 2, lam)
    z = PairPoly.from_symbols((1, 2), (RElem(0, 0, 0, 3), RElem(2, 0, 1, 3)), P)
    c, d = tau_lambda(z).symbols()
    assert c == (2, 1)
    assert d == (lam * RElem(2, 0, 1, 3), RElem.zero(3))
    assert tau(z).symbols()[1][0] == RElem(2, 0, 1, 3)


@settings(max_examples=200, deadline=None)
@given(param_words(1))
def test_x_star_equals_tau_lambda(pw):
    P, z = pw
    assert star_mul(RPoly.x(P.p), z) == tau_lambda(z)


@settings(max_examples=200, deadline=None)
@given(param_words(1))
def test_u_star_kills_left_block(pw):
    P, z = pw
    w = star_mul(RElem.u(P.p), z)
    assert w.left.is_zero()
    assert w.right == z.right.times_u()


@settings(max_examples=200, deadline=None)
@given(param_words(1))
def test_gray_round_trip(pw):
    P, z = pw
    g = gray_psi(z)
    assert len(g) == P.gray_length
    assert gray_inverse(g, P) == z


@settings(max_examples=150, deadline=None)
@given(param_words(2))
def test_gray_is_additive(pw):
    P, z1, z2 = pw
    s = [(a + b) % P.p for a, b in zip(gray_psi(z1), gray_psi(z2))]
    assert tuple(s) == gray_psi(z1 + z2)


@settings(max_examples=150, deadline=None)
@given(param_words(3))
def test_inner_product_bilinear_and_symmetric(pw):
    P, z1, z2, z3 = pw
    assert inner_product(z1 + z2, z3) == inner_product(z1, z3) + inner_product(z2, z3)
    assert inner_product(z1, z2) == inner_product(z2, z1)


def test_inner_product_frozen_value():
    # (u + v)(1*1) + (1 + u)(2 + v) = u + v + 2 + v + 2u = 2 + 3u + 2v = 2 + 2v over Z_3
    P = Params(3, 1, 1)
    z1 = PairPoly.from_symbols((1,), (RElem(1, 1, 0, 3),), P)
    z2 = PairPoly.from_symbols((1,), (RElem(2, 0, 1, 3),), P)
    assert inner_product(z1, z2) == RElem(2, 0, 2, 3)


def test_gray_of_u():
    P = Params(3, 0, 1)
    z = PairPoly.from_symbols((), (RElem.u(3),), P)
    assert gray_psi(z) == (0, 1, 0)


def test_json_round_trip():
    P = Params(3, 2, 2, RElem(1, 1, 0, 3))
    z = PairPoly.from_symbols((1, 2), (RElem(0, 1, 2, 3), RElem(2, 0, 1, 3)), P)
    assert PairPoly.from_json(z.to_json(), P) == z
    assert z.to_json() == {"left": [1, 2], "right": [[0, 1, 2], [2, 0, 1]]}
