"""Exact Laurent polynomial and rational function arithmetic."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from errors import ArityMismatchError, InvalidInputError, PoleError, ZeroDenominatorError
from polynomial import (
    AUX,
    Context,
    LaurentPoly,
    MonomialKey,
    ParamSpec,
    RationalFn,
    binomial,
    monomial,
    parse_rational,
    product,
    q_integer,
    rf_equal,
    rf_evaluate,
    rf_mul,
)

CTX = Context(2)
CONTEXTS = (Context(1), Context(2), Context(3))
MAX_EXP = 10
MAX_COEFF = 10**6


def random_poly(rng: random.Random, ctx: Context = CTX, max_terms: int = 4) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        key = tuple(rng.randint(-MAX_EXP, MAX_EXP) for _ in range(ctx.nvars))
        terms[key] = rng.randint(-MAX_COEFF, MAX_COEFF)
    return LaurentPoly(ctx, terms)


@st.composite
def laurent_poly_strategy(draw, ctx=None, max_terms=5):
    if ctx is None:
        ctx = draw(st.sampled_from(CONTEXTS))
    key = st.tuples(*(st.integers(min_value=-MAX_EXP, max_value=MAX_EXP) for _ in range(ctx.nvars)))
    coeff = st.integers(min_value=-MAX_COEFF, max_value=MAX_COEFF)
    return LaurentPoly(ctx, draw(st.dictionaries(key, coeff, max_size=max_terms)))


def random_spec(rng: random.Random, d: int = 2) -> ParamSpec:
    def draw():
        while True:
            v = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
            if v:
                return v

    return ParamSpec(draw(), tuple(draw() for _ in range(d)))


# ======================
# Ring structure
# ======================
def test_ring_axioms_on_random_polynomials():
    rng = random.Random(20240611)
    for _ in range(1000):
        ctx = rng.choice(CONTEXTS)
        zero, one = LaurentPoly.zero(ctx), LaurentPoly.one(ctx)
        a, b, c = random_poly(rng, ctx), random_poly(rng, ctx), random_poly(rng, ctx)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a
        assert a - a == zero


def test_evaluation_is_a_ring_morphism():
    rng = random.Random(7)
    for _ in range(300):
        ctx = rng.choice(CONTEXTS)
        a, b = random_poly(rng, ctx), random_poly(rng, ctx)
        spec = random_spec(rng, ctx.d)
        assert (a + b).evaluate(spec) == a.evaluate(spec) + b.evaluate(spec)
        assert (a * b).evaluate(spec) == a.evaluate(spec) * b.evaluate(spec)


def test_zero_coefficients_are_never_stored():
    p = LaurentPoly(CTX, {(1, 0, 0): 2, (0, 1, 0): 0})
    assert dict(p.terms) == {(1, 0, 0): 2}
    assert (p - p).is_zero()
    assert len(p + (-p)) == 0


def test_monomial_inverse_and_powers():
    x = monomial(-1, MonomialKey(2, (1, -1)), CTX)
    assert x * x**-1 == LaurentPoly.one(CTX)
    assert (LaurentPoly.q(CTX) + 1) ** 2 == LaurentPoly.q(CTX, 2) + LaurentPoly.q(CTX) * 2 + 1
    with pytest.raises(InvalidInputError):
        (LaurentPoly.q(CTX) + 1) ** -1
    with pytest.raises(InvalidInputError):
        monomial(2, (1, 0, 0), CTX) ** -1


def test_contexts_do_not_mix():
    with pytest.raises(ArityMismatchError):
        LaurentPoly.q(CTX) + LaurentPoly.q(Context(3))
    with pytest.raises(ArityMismatchError):
        LaurentPoly(CTX, {(1, 0): 1})
    with pytest.raises(ArityMismatchError):
        LaurentPoly.Q(2, CTX)


def test_q_integer():
    ctx = Context(1)
    assert str(q_integer(1, ctx)) == "1"
    assert str(q_integer(3, ctx)) == "q^2 + q + 1"
    with pytest.raises(InvalidInputError):
        q_integer(0, ctx)


def test_product_matches_folded_multiplication():
    rng = random.Random(3)
    polys = [random_poly(rng) for _ in range(7)]
    folded = LaurentPoly.one(CTX)
    for p in polys:
        folded = folded * p
    assert product(polys, CTX) == folded
    assert product([], CTX) == 1


def test_swap_Q():
    p = binomial(1, (1, 1, 0), -1, (0, 0, 1), CTX)
    assert p.swap_Q(0, 1) == binomial(1, (1, 0, 1), -1, (0, 1, 0), CTX)


def test_split_unit_normalises_sign_content_and_shift():
    p = LaurentPoly(CTX, {(2, 1, 0): -6, (0, 1, -1): 4})
    c, shift, prim = p.split_unit()
    assert shift == (0, 1, -1)
    assert c == -2
    assert prim == LaurentPoly(CTX, {(2, 0, 1): 3, (0, 0, 0): -2})
    assert prim.times_monomial(shift, c) == p
    with pytest.raises(ZeroDenominatorError):
        LaurentPoly.zero(CTX).split_unit()


# ======================
# Rendering
# ======================
def test_human_readable_form():
    p = LaurentPoly.one(CTX) - monomial(1, (0, 1, -1), CTX)
    assert str(p) == "1 - Q0*Q1^-1"
    assert str(LaurentPoly.zero(CTX)) == "0"
    assert str(LaurentPoly.y(2) * 3 - LaurentPoly.q(AUX)) == "-q + 3*y^2"


def test_json_form_is_sorted_and_reloads():
    rng = random.Random(11)
    p = random_poly(rng, max_terms=6)
    data = p.to_json()
    keys = [(t["e_q"], *t["e_Q"]) for t in data]
    assert keys == sorted(keys)
    assert LaurentPoly.from_json(data, CTX) == p


def test_sympy_oracle_agrees_on_products():
    rng = random.Random(5)
    q, Q0, Q1 = sympy.symbols("q Q0 Q1")
    for _ in range(25):
        a, b = random_poly(rng), random_poly(rng)
        assert sympy.expand((a * b).to_sympy() - a.to_sympy() * b.to_sympy()) == 0
    assert sympy.expand(binomial(1, (1, 1, 0), -1, (0, 0, 1), CTX).to_sympy() - (q * Q0 - Q1)) == 0


# ======================
# Specializations
# ======================
@pytest.mark.parametrize("text,value", [("3", Fraction(3)), ("-2/6", Fraction(-1, 3)), (" 5 / -10 ", Fraction(-1, 2))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e3", "q", "1/0", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidInputError):
        parse_rational(text)


def test_param_spec_rejects_zero():
    with pytest.raises(InvalidInputError):
        ParamSpec(0, (1, 1))
    with pytest.raises(InvalidInputError):
        ParamSpec(2, (1, 0))


def test_evaluate_arity_mismatch():
    with pytest.raises(ArityMismatchError):
        LaurentPoly.q(CTX).evaluate(ParamSpec(2, (1,)))


def test_aux_context_reads_y_from_first_Q_value():
    p = LaurentPoly.q(AUX) * LaurentPoly.y() - 1
    assert p.evaluate(ParamSpec(Fraction(1, 2), (6,))) == 2


# ======================
# Rational functions
# ======================
def test_rational_equality_by_cross_multiplication():
    q = LaurentPoly.q(CTX)
    a = RationalFn(q * q - 1, q - 1)
    b = RationalFn.from_poly(q + 1)
    assert rf_equal(a, b)
    assert rf_equal(b, a)
    assert not rf_equal(a, RationalFn.from_poly(q))


def test_rational_equality_is_transitive_on_random_scalings():
    rng = random.Random(17)
    for _ in range(50):
        num, den, s, t = (random_poly(rng) for _ in range(4))
        if den.is_zero() or s.is_zero() or t.is_zero():
            continue
        f = RationalFn(num, den)
        g = RationalFn(num * s, den * s)
        h = RationalFn(num * s * t, den * s * t)
        assert rf_equal(f, g) and rf_equal(g, h) and rf_equal(f, h)


def test_from_factors_cancels_associates():
    q, Q0, Q1 = LaurentPoly.q(CTX), LaurentPoly.Q(0, CTX), LaurentPoly.Q(1, CTX)
    # (qQ0 - Q1) and (Q1 - qQ0)·Q0 are associates
    f = RationalFn.from_factors([q * Q0 - Q1, q + 1], [(Q1 - q * Q0) * Q0], CTX)
    assert f.den == 1
    assert rf_equal(f, RationalFn(-(q + 1), Q0))


def test_zero_denominator_and_poles():
    q = LaurentPoly.q(CTX)
    with pytest.raises(ZeroDenominatorError):
        RationalFn(q, LaurentPoly.zero(CTX))
    f = RationalFn(q * q - 1, q - 1)
    assert rf_evaluate(f, ParamSpec(2, (1, 1))) == 3
    with pytest.raises(PoleError):
        rf_evaluate(f, ParamSpec(1, (1, 1)))


def test_rational_product():
    q = LaurentPoly.q(CTX)
    f = rf_mul(RationalFn(q + 1, q), RationalFn(q, q - 1))
    assert rf_equal(f, RationalFn(q + 1, q - 1))


# ======================
# Property checks and value semantics
# ======================
@st.composite
def same_context_triple(draw):
    ctx = draw(st.sampled_from(CONTEXTS))
    return tuple(draw(laurent_poly_strategy(ctx=ctx)) for _ in range(3))


@given(same_context_triple())
def test_ring_axioms_hold_for_generated_polynomials(triple):
    a, b, c = triple
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert (a - b) + b == a


@given(laurent_poly_strategy())
def test_equal_polynomials_hash_equal(p):
    copy = LaurentPoly(p.ctx, dict(p.terms))
    assert copy == p
    assert hash(copy) == hash(p)


def test_constants_hash_like_ints():
    assert LaurentPoly.constant(3, CTX) == 3
    assert hash(LaurentPoly.constant(3, CTX)) == hash(3)
    assert hash(LaurentPoly.zero(CTX)) == hash(0)
    assert hash(LaurentPoly.constant(-7, Context(3))) == hash(-7)
    assert {3: "three"}[LaurentPoly.constant(3, CTX)] == "three"
    assert len({LaurentPoly.one(CTX), 1}) == 1


def test_polynomials_are_immutable():
    p = LaurentPoly.q(CTX) + 1
    with pytest.raises(AttributeError):
        p.ctx = Context(3)
    with pytest.raises(AttributeError):
        p._terms = {}
    with pytest.raises(AttributeError):
        del p.ctx
    assert p.ctx == CTX
    hash(p)
    assert p == LaurentPoly.q(CTX) + 1


def test_polynomials_pickle():
    import pickle

    p = LaurentPoly.Q(0, CTX) * 5 - LaurentPoly.q(CTX, -2)
    assert pickle.loads(pickle.dumps(p)) == p
