import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from osp_lickorish.cyclotomic import CycNum, cyclotomic_poly, gauss_minus, make_context

ORDERS = [3, 5, 7, 9, 15]


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_poly(15) == (1, -1, 0, 1, -1, 1, 0, -1, 1)


@pytest.mark.parametrize("N", [2, 4, 1, -3])
def test_even_or_small_orders_rejected(N):
    with pytest.raises(ValueError):
        make_context(N)


def test_root_must_be_coprime():
    with pytest.raises(ValueError):
        make_context(9, 3)


@st.composite
def elements(draw, N=None):
    N = N or draw(st.sampled_from(ORDERS))
    ctx = make_context(N)
    nums = draw(st.lists(st.integers(-20, 20), min_size=ctx.deg, max_size=ctx.deg))
    den = draw(st.integers(1, 12))
    return ctx.from_coeffs([Fraction(c, den) for c in nums])


@st.composite
def triples(draw):
    N = draw(st.sampled_from(ORDERS))
    return tuple(draw(elements(N)) for _ in range(3))


@given(triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == a.ctx.zero()


@given(elements())
def test_inverse(a):
    if a:
        assert a * a.inv() == a.ctx.one()
        assert (a / a) == a.ctx.one()
    else:
        with pytest.raises(ZeroDivisionError):
            a.inv()


@given(triples(), st.sampled_from([1, 2]))
def test_embedding_is_a_ring_map(t, k):
    a, b, _ = t
    ctx = make_context(a.ctx.N, k if math.gcd(k, a.ctx.N) == 1 else 1)
    a2, b2 = CycNum(ctx, a.num, a.den), CycNum(ctx, b.num, b.den)
    assert abs((a2 * b2).embed() - a2.embed() * b2.embed()) < 1e-8 * (1 + abs(a2.embed() * b2.embed()))


@pytest.mark.parametrize("N", ORDERS)
def test_q_has_order_N(N):
    ctx = make_context(N)
    q = ctx.q
    assert q**N == ctx.one()
    assert all(q**e != ctx.one() for e in range(1, N))
    assert q ** (-1) * q == ctx.one()


@given(st.sampled_from(ORDERS), st.dictionaries(st.integers(-40, 40), st.integers(-5, 5), max_size=6))
def test_laurent_matches_numeric(N, terms):
    ctx = make_context(N)
    z = cmath.exp(2j * math.pi / N)
    expect = sum(c * z**e for e, c in terms.items())
    assert abs(ctx.laurent(terms).embed() - expect) < 1e-8


@pytest.mark.parametrize("N", [3, 5, 7, 15])
def test_gauss_sum_norm_squarefree(N):
    assert abs(abs(gauss_minus(make_context(N)).embed()) ** 2 - N) < 1e-9


def test_n3_constants(ctx3):
    q = ctx3.q
    assert q * q == -ctx3.one() - q
    G = gauss_minus(ctx3)
    assert G == ctx3.one() + q * q * 2
    assert G * G == ctx3.const(-3)


def test_display_and_hash(ctx3):
    a = ctx3.from_coeffs([Fraction(1, 2), -1])
    assert str(a) == "1/2 - q"
    assert a.coeff_strings() == ["1/2", "-1"]
    assert hash(a) == hash(ctx3.from_coeffs([Fraction(2, 4), -1]))
    assert str(ctx3.zero()) == "0"


def test_embedding_examples(ctx3):
    z = ctx3.q.embed()
    assert abs(z - complex(-0.5, math.sqrt(3) / 2)) < 1e-12
    assert ctx3.zero().embed() == 0
    assert abs(abs((ctx3.one() + ctx3.q**2 * 2).embed()) - math.sqrt(3)) < 1e-9
