from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmquat.lie import LieElement
from kmquat.scalars import GaussRational, Marker
from kmquat.suites import random_homogeneous
from kmquat.syntax import Bracket, Gen, ParseError, Sum, evaluate, format_element, format_expr, parse

from conftest import A1, A1_AFFINE, A2, TEST_GCMS


def test_parse_shapes():
    e = parse("[Je1,Jf1]")
    assert isinstance(e, Bracket)
    assert e.left.gen.marker is Marker.J
    assert isinstance(parse("e1 + 2*f2"), Sum)
    g = parse("Jihv2")
    assert isinstance(g, Gen)
    assert g.gen.marker is Marker.JI and g.gen.sym.kind.value == "hv" and g.gen.sym.index == 2


def test_cli_examples(algebras):
    a2 = algebras(A2)
    assert format_element(evaluate("[Je1,Jf1]", a2), a2) == "-1*hv1"
    assert format_element(evaluate("[e1,e1]", a2), a2) == "0"
    one = algebras(A1)
    assert format_element(evaluate("[f1,[e1,Je1]]", one), one) == "0"


def test_coefficients(algebras):
    alg = algebras(A2)
    x = evaluate("(1/2+3i)*e1 - 2/3*Jf2", alg)
    assert x == alg.e(1) * GaussRational(Fraction(1, 2), 3) - alg.f(2, Marker.J) * Fraction(2, 3)
    assert evaluate("(-i)*e1", alg) == alg.e(1) * GaussRational(0, -1)
    assert evaluate("ie1", alg) == alg.e(1, Marker.I)
    assert evaluate("0", alg) == LieElement()


def test_non_coroot_cartan_prints_h(algebras):
    alg = algebras(A1_AFFINE)
    text = format_element(alg.h(3, Marker.J), alg)
    assert text == "1*Jh3"
    assert evaluate(text, alg) == alg.h(3, Marker.J)


@pytest.mark.parametrize(
    "text,pos",
    [("[e1,", 4), ("[e1 f1]", 4), ("e1 $", 3), ("3", 0), ("e0", 0), ("e1]", 2), ("", 0), ("(1+)*e1", 0)],
)
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


def test_format_expr_roundtrip():
    for text in ("[Je1,[f2,ihv1]]", "1*e1 + -1*Jf2", "[h1,[e1,e2]]"):
        assert format_expr(parse(format_expr(parse(text)))) == format_expr(parse(text))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(TEST_GCMS), st.integers(0, 10**6), st.booleans())
def test_print_parse_roundtrip(a, seed, complex_coef):
    from conftest import UniversalAlgebra, realize

    alg = UniversalAlgebra(realize(a))
    rng = random.Random(seed)
    x = random_homogeneous(alg, rng, max_ht=4) + random_homogeneous(alg, rng, max_ht=2)
    if complex_coef:
        x = x * GaussRational(Fraction(rng.randint(-3, 3), 2), rng.randint(1, 3))
    assert evaluate(format_element(x, alg), alg) == x


def test_printing_order(algebras):
    # lowest height first, Cartan at height zero, words in Lyndon order
    alg = algebras(A2)
    x = evaluate("[e1,e2] + Jf1 + 3*hv2 + [Je1,[e1,e2]]", alg)
    assert format_element(x, alg) == "1*Jf1 + 3*hv2 + 1*[e1,e2] + -1*[[e1,e2],Je1]"
