"""Parsing and rendering of algebra elements."""
import re

import pytest

from nccalc.errors import ParseError
from nccalc.expr import parse_element, parse_scalar, render_element, render_latex
from nccalc.models import sphere_algebra, torus_algebra

T = torus_algebra()
S = sphere_algebra()
SK = sphere_algebra(formal=True)


@pytest.mark.parametrize("text,alg,want", [
    ("q*U*V", T, "q * U * V"),
    ("-i*U^-1", T, "-i * U^(-1)"),
    ("1/t", S, "t^(-1)"),
    ("1/(t*(1-t))", S, "t^(-1)*(1 - t)^(-1)"),
    ("q^(1/2)*W*", S, "q^(1/2) * W*"),
    ("Kinv*K_3/(2*(1-t))", SK, "1/2*(1 - t)^(-1) * Kinv * K_3"),
])
def test_render_text(text, alg, want):
    x = parse_element(text, alg)
    assert render_element(x) == want
    assert parse_element(want, alg) == x


@pytest.mark.parametrize("text,alg,want", [
    ("q*U*V", T, r"q\, U V"),
    ("1/t", S, "|Z|^{-2}"),
    ("1/(t*(1-t))", S, "|Z|^{-2} |W|^{-2}"),
    ("t*(1-t)*Z", S, r"|Z|^{2} |W|^{2}\, Z"),
    ("Kinv*K_3/(2*(1-t))", SK, r"|W|^{-2}\, H_{3}"),
    ("Kinv*K_1", SK, r"2\, H_{1}"),
    ("K_1", SK, "K_{1}"),
    ("q^(1/2)*W*", S, r"q^{1/2}\, W^{*}"),
])
def test_render_latex(text, alg, want):
    assert render_latex(parse_element(text, alg)) == want


def test_whitespace_and_implicit_forms():
    assert parse_element(" U * V ", T) == parse_element("U*V", T)
    assert parse_element("(U*V)*", T) == parse_element("U*V", T).star()
    assert parse_element("2/U", T) == parse_element("2*U^-1", T)


def test_parse_scalar():
    assert parse_scalar("(1+i)/2") * 2 == parse_scalar("1 + i")
    with pytest.raises(ParseError):
        parse_scalar("U")


@pytest.mark.parametrize("text,alg,fragment", [
    ("", T, "empty"),
    ("U +", T, "expected an atom"),
    ("(U", T, "expected ')'"),
    ("X", T, "unknown symbol"),
    ("t", T, "not defined on the torus"),
    ("Z", T, "not in"),
    ("U", S, "not in"),
    ("U^(1/2)", T, "fractional exponents"),
    ("K_1", T, "not available"),
    ("1/0", T, "cannot divide"),
    ("1/(U+V)", T, "cannot divide"),
    ("1/Z", S, "cannot divide"),
])
def test_parse_errors(text, alg, fragment):
    with pytest.raises(ParseError, match=re.escape(fragment)):
        parse_element(text, alg)
