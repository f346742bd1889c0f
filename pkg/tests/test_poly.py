import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nashjet.poly import (
    MultiIndex,
    ParseError,
    Polynomial,
    WeightSystem,
    euler_apply,
    gradient,
    hasse_derivative,
    is_weighted_homogeneous,
    multi_indices,
    parse_polynomial,
    partial_derivative,
    weighted_degree,
)

from oracles import from_sympy, symbols, to_sympy


def P(text, s=2):
    return parse_polynomial(text, s)


# -- strategies -----------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, s=None, max_deg=3, max_terms=5):
    s = s or draw(st.integers(1, 3))
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        m = tuple(draw(st.lists(st.integers(0, max_deg), min_size=s, max_size=s)))
        terms[m] = draw(coeffs)
    return Polynomial(s, terms)


@st.composite
def homogeneous(draw):
    s = draw(st.integers(1, 3))
    w = WeightSystem(draw(st.lists(st.integers(1, 4), min_size=s, max_size=s)))
    d = draw(st.integers(2, 8))
    monos = [m for k in range(d + 1) for m in multi_indices(s, k) if w.degree(m) == d]
    if not monos:
        monos = [MultiIndex.zero(s)]
        d = 0
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=4))
    f = Polynomial(s, {m: draw(coeffs.filter(bool)) for m in chosen})
    return f, w, d


# -- examples -------------------------------------------------------------------

def test_hasse_examples():
    assert hasse_derivative(P("x^3"), (2, 0)) == P("3*x")
    f = P("x^2 + 3*x*y - 1/2*y^3")
    assert hasse_derivative(f, (0, 0)) == f
    assert hasse_derivative(P("x^2*y"), (1, 1)) == P("2*x")


def test_partial_examples():
    assert partial_derivative(P("x^3 + y^3"), 0) == P("3*x^2")
    assert partial_derivative(P("7"), 1).is_zero()
    assert partial_derivative(P("x^2*y"), 1) == P("x^2")
    with pytest.raises(IndexError):
        partial_derivative(P("x"), 2)


def test_weighted_degree_examples():
    assert weighted_degree(P("x^3 + y^3"), WeightSystem((1, 1))) == (3, True)
    assert weighted_degree(P("x^2 + y^3"), WeightSystem((3, 2))) == (6, True)
    assert weighted_degree(P("x + y^2"), WeightSystem((1, 1))) == (2, False)
    assert weighted_degree(Polynomial.zero(2), WeightSystem((1, 1))) is None


def test_euler_examples():
    f = P("x^3 + y^3")
    assert euler_apply(f, WeightSystem((1, 1))) == 3 * f
    g = P("x^2 + y^3")
    assert euler_apply(g, WeightSystem((3, 2))) == 6 * g
    assert not is_weighted_homogeneous(P("x + y^2"), WeightSystem((1, 1)))


def test_multi_indices_counts():
    for s in range(1, 4):
        for d in range(5):
            assert len(multi_indices(s, d)) == math.comb(d + s - 1, s - 1)


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        WeightSystem((1, 0))


# -- properties -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.data())
def test_hasse_composition(data):
    s = data.draw(st.integers(1, 3))
    f = data.draw(polys(s=s, max_deg=4))
    g = tuple(data.draw(st.lists(st.integers(0, 2), min_size=s, max_size=s)))
    d = tuple(data.draw(st.lists(st.integers(0, 2), min_size=s, max_size=s)))
    both = tuple(a + b for a, b in zip(g, d))
    scale = math.prod(math.comb(a + b, b) for a, b in zip(g, d))
    assert hasse_derivative(hasse_derivative(f, g), d) == hasse_derivative(f, both) * scale


@settings(max_examples=60, deadline=None)
@given(homogeneous(), st.data())
def test_hasse_keeps_homogeneity(fwd, data):
    f, w, d = fwd
    g = tuple(data.draw(st.lists(st.integers(0, 2), min_size=f.nvars, max_size=f.nvars)))
    h = hasse_derivative(f, g)
    if h:
        assert weighted_degree(h, w) == (d - w.degree(g), True)


@settings(max_examples=60, deadline=None)
@given(homogeneous())
def test_euler_relation(fwd):
    f, w, d = fwd
    assert sum((w[i] * Polynomial.variable(i, f.nvars) * gi for i, gi in enumerate(gradient(f))),
               Polynomial.zero(f.nvars)) == d * f
    assert euler_apply(f, w) == d * f


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_ring_axioms_against_sympy(data):
    s = data.draw(st.integers(1, 3))
    f, g, h = (data.draw(polys(s=s, max_deg=2, max_terms=4)) for _ in range(3))
    assert (f + g) * h == f * h + g * h
    assert f * (g * h) == (f * g) * h
    assert f - f == Polynomial.zero(s)
    x = symbols(s)
    assert from_sympy(to_sympy(f, x) * to_sympy(g, x) + to_sympy(h, x) ** 2, x) == f * g + h ** 2


@settings(max_examples=60, deadline=None)
@given(polys())
def test_print_parse_round_trip(f):
    text = f.to_str()
    assert parse_polynomial(text, f.nvars) == f


def test_round_trip_many_variables():
    f = Polynomial(7, {(1, 0, 0, 0, 0, 0, 2): Fraction(-3, 2), (0,) * 7: 5})
    text = f.to_str()
    assert "x7" in text
    assert parse_polynomial(text, 7) == f


# -- parser ---------------------------------------------------------------------

def test_parser_grammar():
    assert P("1/2*x^2*y") == Polynomial(2, {(2, 1): Fraction(1, 2)})
    assert P("-(x - y)^2") == P("-x^2 + 2*x*y - y^2")
    assert parse_polynomial("x1^2 + x3") == Polynomial(3, {(2, 0, 0): 1, (0, 0, 1): 1})
    assert parse_polynomial("z").nvars == 3


@pytest.mark.parametrize("text, pos", [
    ("x^^2", 2),
    ("2x", 1),
    ("x y", 2),
    ("x +", 3),
    ("1/0*x", 2),
])
def test_parser_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.pos == pos
    assert "^" in str(info.value)


def test_parser_rejects_mixed_names_and_range():
    with pytest.raises(ParseError):
        parse_polynomial("x + x2")
    with pytest.raises(ParseError):
        parse_polynomial("z", 2)
