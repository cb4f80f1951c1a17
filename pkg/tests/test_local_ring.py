import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpuv.finite_field import FpPoly
from zpuv.local_ring import (
    RElem,
    RPoly,
    is_regular,
    is_unit,
    phi,
    phi_mul,
    relem_inverse,
    rho,
    rho_poly,
    rpoly_divides,
    rpoly_divmod_leadunit,
    rpoly_exact_div,
    rpoly_mul_mod,
)

PRIMES = [2, 3, 5]


def matrix(e: RElem) -> np.ndarray:
    # a + ub + vc as an upper triangular 3x3 matrix; u^2 = v^2 = uv = 0 holds for these
    return np.array([[e.a, e.b, e.c], [0, e.a, 0], [0, 0, e.a]], dtype=np.int64)


@st.composite
def elems(draw, p=None):
    p = p or draw(st.sampled_from(PRIMES))
    return RElem(draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1)), draw(st.integers(0, p - 1)), p)


@st.composite
def elem_pairs(draw):
    p = draw(st.sampled_from(PRIMES))
    return draw(elems(p)), draw(elems(p))


@st.composite
def rpolys(draw, p, max_len=5):
    return RPoly.from_coeffs(draw(st.lists(elems(p), max_size=max_len)), p)


@settings(max_examples=300, deadline=None)
@given(elem_pairs())
def test_multiplication_matches_matrix_model(pair):
    x, y = pair
    expect = (matrix(x) @ matrix(y)) % x.p
    assert (matrix(x * y) == expect).all()
    assert x * y == y * x


def test_nilpotent_relations():
    for p in PRIMES:
        u, v = RElem.u(p), RElem.v(p)
        assert u * u == v * v == u * v == RElem.zero(p)


def test_units_are_free_part_nonzero():
    for p in PRIMES:
        for e in RElem.all(p):
            assert is_unit(e) == (e.a != 0)
            if is_unit(e):
                assert e * relem_inverse(e) == RElem.one(p)
            else:
                with pytest.raises(ZeroDivisionError):
                    relem_inverse(e)


def test_inverse_frozen_value():
    # (2 + u + v)(3 + u + v) = 6 + 5u + 5v = 1 over Z_5
    assert relem_inverse(RElem(2, 1, 1, 5)) == RElem(3, 1, 1, 5)


def test_rho_and_phi():
    e = RElem(2, 1, 1, 3)
    assert rho(e) == 2
    assert phi(e) == (2, 1)
    assert phi_mul(phi(e), phi(e), 3) == phi(e * e)


def test_mismatched_p():
    with pytest.raises(ValueError):
        RElem.one(2) + RElem.one(3)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_rpoly_product_matches_convolution(data):
    p = data.draw(st.sampled_from(PRIMES))
    f, g = data.draw(rpolys(p)), data.draw(rpolys(p))
    n = len(f.coeffs) + len(g.coeffs)
    out = [RElem.zero(p)] * max(n - 1, 0)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + a * b
    assert f * g == RPoly.from_coeffs(out, p)


def test_division_frozen_value():
    # (x + 1 + 2u)(x + 2 + u) = x^2 + 3x + 3ux + 2 + u + 4u = x^2 - (1 + u) over Z_3
    lam = RElem(1, 1, 0, 3)
    num = RPoly.xn_minus(2, lam)
    den = RPoly.from_coeffs([(1, 2, 0), 1], 3)
    q, r = rpoly_divmod_leadunit(num, den)
    assert r.is_zero()
    assert q == RPoly.from_coeffs([(2, 1, 0), 1], 3)


def test_division_needs_unit_lead():
    den = RPoly.from_coeffs([1, (0, 1, 0)], 3)  # 1 + ux
    with pytest.raises(ValueError, match="leading coefficient not invertible"):
        rpoly_divmod_leadunit(RPoly.xn_minus(2, RElem.one(3)), den)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_division_identity(data):
    p = data.draw(st.sampled_from(PRIMES))
    num = data.draw(rpolys(p, 7))
    lead = data.draw(elems(p).filter(lambda e: e.a != 0))
    den = RPoly.from_coeffs(data.draw(st.lists(elems(p), max_size=3)) + [lead], p)
    q, r = rpoly_divmod_leadunit(num, den)
    assert den * q + r == num
    assert r.degree < den.degree


def test_exact_div_and_divides():
    p = 3
    a = RPoly.from_coeffs([(1, 2, 0), 1], p)
    b = RPoly.from_coeffs([(2, 0, 1), 1], p)
    assert rpoly_divides(a, a * b)
    assert rpoly_exact_div(a * b, a) == b


def test_regular_means_free_part_nonzero():
    assert is_regular(RPoly.from_coeffs([(0, 1, 0), 1], 3))
    assert not is_regular(RPoly.from_coeffs([(0, 1, 0), (0, 0, 2)], 3))
    assert rho_poly(RPoly.from_coeffs([(1, 1, 1), (2, 1, 0)], 3)) == FpPoly([1, 2], 3)


def test_mul_mod_constacyclic():
    lam = RElem(1, 1, 0, 3)
    x = RPoly.x(3)
    assert rpoly_mul_mod(x, x, 2, lam) == RPoly.constant(lam)
    with pytest.raises(ValueError):
        rpoly_mul_mod(x, x, 2, RElem(0, 1, 0, 3))


def test_xn_minus_and_reduce():
    lam = RElem(1, 2, 1, 5)
    f = RPoly.xn_minus(4, lam)
    assert f.reduce(4, lam).is_zero()
    assert RPoly.x(5).shift(3).reduce(4, lam) == RPoly.constant(lam)
    assert RPoly.x(5).shift(2).reduce(4, lam) == RPoly.x(5).shift(2)
