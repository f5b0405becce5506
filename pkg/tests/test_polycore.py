from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from measurebounds.errors import InvalidArgument, ParseError
from measurebounds.polycore import (
    SparsePolynomial,
    enumerate_multiindices,
    evaluate,
    format_polynomial,
    parse_polynomial,
)
from oracles import brute_force_multiindices


class TestEnumerate:
    def test_univariate(self):
        s = enumerate_multiindices(1, 3)
        assert s.members == ((0,), (1,), (2,), (3,))

    def test_bivariate_order(self):
        s = enumerate_multiindices(2, 2)
        assert s.members == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))

    def test_size_against_brute_force(self):
        s = enumerate_multiindices(3, 4)
        assert len(s) == 35
        assert sorted(s.members) == sorted(brute_force_multiindices(3, 4))

    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("d", range(0, 9))
    def test_binomial_size(self, n, d):
        s = enumerate_multiindices(n, d)
        assert len(s) == comb(n + d, d)
        assert len(set(s.members)) == len(s)

    def test_graded(self):
        degrees = [sum(a) for a in enumerate_multiindices(3, 5)]
        assert degrees == sorted(degrees)

    def test_index_lookup(self):
        s = enumerate_multiindices(2, 3)
        for i, a in enumerate(s):
            assert s.index(a) == i
        assert (1, 1) in s and (4, 0) not in s

    @pytest.mark.parametrize("n,d", [(0, 2), (2, -1)])
    def test_invalid(self, n, d):
        with pytest.raises(InvalidArgument):
            enumerate_multiindices(n, d)


class TestParse:
    def test_three_terms(self):
        p = parse_polynomial("x1^2 + 0.5*x1*x2 - x3", 3)
        assert len(p.terms) == 3
        assert p.degree == 2
        assert p.terms[(1, 1, 0)] == 0.5
        assert p.terms[(0, 0, 1)] == -1.0

    def test_cancellation(self):
        p = parse_polynomial("x1 - x1", 1)
        assert p.is_zero() and p.degree == 0

    def test_single_term(self):
        p = parse_polynomial("2*x1^3*x2", 2)
        assert p.terms == {(3, 1): 2.0}

    def test_fractions_and_constants(self):
        p = parse_polynomial("1/2*x1 + 3/4 - 0.25", 1)
        assert p.terms == {(0,): 0.5, (1,): 0.5}

    def test_whitespace_and_repeated_factor(self):
        p = parse_polynomial("  - 3 * x2 ^ 2 * x2 +x1", 2)
        assert p.terms == {(1, 0): 1.0, (0, 3): -3.0}

    def test_unicode_minus(self):
        assert parse_polynomial("x1 − 1", 1).terms == {(0,): -1.0, (1,): 1.0}

    @pytest.mark.parametrize(
        "text,pos",
        [("x1 + x4", 5), ("x1^-2", 3), ("x1 +", 4), ("2**x1", 2), ("x1 $ x2", 3), ("1/0*x1", 2)],
    )
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_polynomial(text, 3)
        assert info.value.position == pos

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_polynomial("   ", 1)


class TestEvaluate:
    @pytest.mark.parametrize(
        "text,n,x,expected",
        [("x1^2 + x1", 1, [1.0], 2.0), ("x1 + x2", 2, [-1.0, -1.0], -2.0), ("x1^2*x2", 2, [2.0, 3.0], 12.0)],
    )
    def test_values(self, text, n, x, expected):
        assert evaluate(parse_polynomial(text, n), x) == expected

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgument):
            evaluate(parse_polynomial("x1", 2), [1.0])

    def test_many_matches_single(self):
        p = parse_polynomial("x1^3 - 2*x1*x2 + 1/3", 2)
        pts = np.array([[0.1, -0.7], [1.0, 1.0], [-0.5, 0.25]])
        assert np.allclose(p.evaluate_many(pts), [p(x) for x in pts], rtol=0, atol=1e-15)


def test_partial_derivative():
    p = parse_polynomial("x1^3*x2 + 2*x2^2 - x1", 2)
    assert p.partial(0).terms == {(0, 0): -1.0, (2, 1): 3.0}
    assert p.partial(1).terms == {(0, 1): 4.0, (3, 0): 1.0}


# property tests

coefficients = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def polynomials(draw, n=None):
    n = n or draw(st.integers(1, 4))
    exps = st.tuples(*[st.integers(0, 4)] * n)
    terms = draw(st.dictionaries(exps, coefficients, max_size=8))
    return SparsePolynomial(n, terms)


@given(polynomials())
@settings(max_examples=200)
def test_print_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p), p.n) == p


@st.composite
def pairs_with_point(draw):
    n = draw(st.integers(1, 3))
    p = draw(polynomials(n))
    q = draw(polynomials(n))
    x = draw(st.lists(st.floats(-1, 1), min_size=n, max_size=n))
    return p, q, x


@given(pairs_with_point())
def test_evaluate_is_linear(args):
    p, q, x = args
    lhs = evaluate(p + q, x)
    rhs = evaluate(p, x) + evaluate(q, x)
    scale = sum(abs(c) for c in p.terms.values()) + sum(abs(c) for c in q.terms.values()) + 1.0
    assert abs(lhs - rhs) <= 1e-12 * scale
