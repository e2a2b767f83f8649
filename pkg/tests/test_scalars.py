"""Exact scalars: Gaussian rationals, rational functions of q^(1/2), central functions of t."""
from fractions import Fraction

import pytest

from nccalc.errors import DivisionByZero, UnsupportedSpecialization
from nccalc.expr import parse_scalar
from nccalc.scalars import CentralFn, GaussRat, Scalar


def sc(text):
    return parse_scalar(text)


def test_conjugation_inverts_q():
    assert sc("q^(1/2)").conj() == sc("q^(-1/2)")
    assert sc("q").conj() * sc("q") == Scalar(1)
    assert sc("i*q^(1/2)").conj() == sc("-i*q^(-1/2)")


def test_modulus_of_half_plus_half_i():
    lam = sc("(1+i)/2")
    assert lam * lam.conj() == Scalar(Fraction(1, 2))
    assert (lam * lam.conj()).rational_value() == Fraction(1, 2)


def test_q_times_inverse_is_one():
    q = sc("q")
    assert q * q.inverse() == Scalar(1)
    assert q * sc("q^-1") == Scalar(1)
    assert (q - 1) / (q - 1) == Scalar(1)


def test_rational_function_normal_form_cancels_common_factors():
    assert sc("(q^2 - 1)/(q - 1)") == sc("q + 1")
    assert sc("1/(q + 1) + q/(q + 1)") == Scalar(1)


def test_specialize_q_examples():
    assert sc("q^(3/2) + i").specialize_q() == sc("1 + i")
    assert sc("(q - 1)/q").specialize_q() == Scalar(0)
    assert sc("(q^2 - 1)/(q - 1)").specialize_q() == Scalar(2)


def test_specialize_q_rejects_poles_and_other_values():
    with pytest.raises(DivisionByZero):
        sc("1/(q - 1)").specialize_q()
    with pytest.raises(UnsupportedSpecialization):
        sc("q").specialize_q(2)


def test_q_euler_operator():
    assert sc("q").q_euler() == sc("q")
    assert sc("q^(1/2)").q_euler() == sc("q^(1/2)/2")
    assert sc("3 + i").q_euler() == Scalar(0)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Scalar(1) / Scalar(0)
    with pytest.raises(DivisionByZero):
        GaussRat(1) / GaussRat(0)


def test_gauss_rational_arithmetic():
    a = GaussRat(Fraction(1, 2), 1)
    assert a * a.conj() == GaussRat(Fraction(5, 4))
    assert a / a == GaussRat(1)
    assert a.norm() == Fraction(5, 4)


def test_central_functions_reduce_by_t_and_one_minus_t():
    t = CentralFn.t()
    omt = CentralFn.one_minus_t()
    assert t * t.inverse() == CentralFn.make([Scalar(1)])
    assert (t * omt) * omt.inverse() == t
    # t/(t(1-t)) + (1-t)/(t(1-t)) = 1/(t(1-t))
    tot = t * (t * omt).inverse() + omt * (t * omt).inverse()
    assert tot == (t * omt).inverse()


def test_central_derivative():
    t = CentralFn.t()
    assert (t * t).derivative() == t.scale(Scalar(2))
    assert t.inverse().derivative() == -(t * t).inverse()


def test_central_render_is_unambiguous():
    x = CentralFn.make([Scalar.gauss(1, 1)], 0, 1)
    assert x.render() == "(1 + i)*(1 - t)^(-1)"
