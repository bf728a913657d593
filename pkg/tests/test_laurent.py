import pytest
from hypothesis import given, settings, strategies as st

from wkl.laurent import ONE, Q, QINV, ZERO, CoefficientOverflow, LaurentPoly, format_poly, parse_poly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-50, 50), max_size=5).map(LaurentPoly)


def P(**kw):
    # P(q1=1, m2=3) -> q + 3 q^-2
    out = {}
    for k, v in kw.items():
        out[int(k[1:]) * (1 if k[0] == "p" else -1)] = v
    return LaurentPoly(out)


def test_addition_cancels():
    assert (Q + 1) + (QINV - 1) == Q + QINV


def test_q_times_qinv():
    assert Q * QINV == ONE


def test_square():
    assert (Q + QINV) ** 2 == LaurentPoly({2: 1, 0: 2, -2: 1})


def test_bar_examples():
    assert Q.bar() == QINV
    assert LaurentPoly.constant(3).bar() == 3
    assert LaurentPoly({2: 1, -1: 1}).bar() == LaurentPoly({-2: 1, 1: 1})


def test_eval_minus_one():
    assert Q.eval_int(-1) == -1
    assert LaurentPoly({2: 1, 1: 1}).eval_int(-1) == 0
    assert LaurentPoly({0: 1, 3: 2}).eval_int(-1) == -1


def test_eval_at_zero_rejected():
    with pytest.raises(ValueError):
        Q.eval_int(0)


def test_constant_term_and_qZq():
    p = Q + 3
    assert p.constant_term() == 3 and not p.in_qZq()
    r = Q + Q * Q
    assert r.constant_term() == 0 and r.in_qZq()
    assert ZERO.constant_term() == 0 and ZERO.in_qZq()
    assert not QINV.in_qZq()


def test_parity():
    assert LaurentPoly({1: 1, 3: 1}).parity_check(1)
    assert not LaurentPoly({2: 1}).parity_check(1)
    assert ZERO.parity_check(0) and ZERO.parity_check(1)


def test_zero_has_no_degree():
    assert ZERO.min_exp is None and ZERO.max_exp is None
    assert not ZERO
    assert LaurentPoly({3: 0, 1: 0}) == ZERO


def test_overflow_is_an_error():
    big = LaurentPoly.constant(2 ** 62)
    with pytest.raises(CoefficientOverflow):
        big + big
    with pytest.raises(CoefficientOverflow):
        LaurentPoly.constant(2 ** 63)


def test_text_form():
    p = LaurentPoly({2: 1, 0: 2, -1: -3})
    assert format_poly(p) == "q^2 + 2 - 3*q^-1"
    assert format_poly(ZERO) == "0"
    assert parse_poly("q^2 + 2 - 3*q^-1") == p


def test_json_form():
    assert (Q + 1).to_json() == {"0": 1, "1": 1}
    assert LaurentPoly.from_json({"-2": 4}) == LaurentPoly.monomial(-2, 4)


@given(polys)
def test_bar_is_involution(p):
    assert p.bar().bar() == p


@given(polys, polys)
def test_bar_is_ring_hom(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys, polys)
def test_eval_is_multiplicative(a, b):
    assert (a * b).eval_int(-1) == a.eval_int(-1) * b.eval_int(-1)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ZERO


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-9, 9)), max_size=8))
def test_canonical_form(pairs):
    acc = {}
    for e, c in pairs:
        acc[e] = acc.get(e, 0) + c
    a = LaurentPoly(acc)
    b = sum((LaurentPoly.monomial(e, c) for e, c in reversed(pairs)), ZERO)
    assert a == b and hash(a) == hash(b) and a.terms == b.terms
    assert all(c != 0 for _, c in a.terms)


@given(polys)
def test_text_and_json_round_trip(p):
    assert parse_poly(format_poly(p)) == p
    assert LaurentPoly.from_json(p.to_json()) == p


@settings(max_examples=50)
@given(polys, st.integers(-4, 4))
def test_shift_is_monomial_product(p, k):
    assert p.shift(k) == p * LaurentPoly.monomial(k)
