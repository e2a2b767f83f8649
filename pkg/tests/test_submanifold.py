"""Gauss-Weingarten tables, induced connection, Gauss' equation and mean curvature."""
from itertools import product

import pytest

import oracles
from builders import LAM2, embedding
from nccalc.calculus import vright
from nccalc.connection import levi_civita
from nccalc.errors import SingularMatrix
from nccalc.expr import parse_element
from nccalc.models import flat_torus_metric, torus_algebra, torus_calculus
from nccalc.morphism import identity_hom, make_embedding
from nccalc.submanifold import (gauss_equation_check, gauss_weingarten, induced_connection,
                                is_minimal, mean_curvature, mean_curvature_at,
                                mean_curvature_basis_independence_check,
                                strip_invertible_right)

MODES = [("one", "half"), ("one", "unbalanced"), ("formal", "half"), ("formal", "unbalanced")]


def _tables(mode, params):
    e, conn = embedding(mode, params)
    return e, conn, gauss_weingarten(e, conn)


def test_weingarten_map_of_the_normal():
    e, _, sff = _tables("formal", "half")
    el = lambda s: parse_element(s, e.source.algebra)
    # A_{E_3}(δ_1) = -E_1 (H_3 + (1 - t)) with H_3 = Kinv K_3 / 2
    assert sff.A[0][0] == (el("-(1 - t) - Kinv*K_3/2"), el("0"), el("0"))
    assert sff.A[0][1] == (el("0"), el("t - Kinv*K_3/2"), el("0"))


def test_second_fundamental_form_round_sphere():
    e, _, sff = _tables("one", "half")
    el = lambda s: parse_element(s, e.source.algebra)
    assert sff.alpha[0][0] == (el("0"), el("0"), el("-1"))
    assert sff.alpha[1][1] == (el("0"), el("0"), el("1"))
    assert sff.alpha[0][1] == (el("0"),) * 3
    assert all(not any(v) for row in sff.D for v in row)


def test_normal_connection_formal():
    e, _, sff = _tables("formal", "half")
    el = lambda s: parse_element(s, e.source.algebra)
    assert sff.D[0][0] == (el("0"), el("0"), el("Kinv*K_1/2"))
    assert sff.D[1][0] == (el("0"), el("0"), el("Kinv*K_2/2"))


@pytest.mark.parametrize("params", ["half", "unbalanced"])
def test_induced_connection_vanishes_for_constant_factor(params):
    e, conn, _ = _tables("one", params)
    ic = induced_connection(e, conn)
    assert all(not g for plane in ic.gamma for row in plane for g in row)


@pytest.mark.parametrize("params", ["half", "unbalanced"])
def test_induced_connection_matches_oracle(params):
    e, conn, _ = _tables("formal", params)
    ic = induced_connection(e, conn)
    lam2 = oracles.frac(LAM2[params])
    G = oracles.torus_lc(lam2, 1 - lam2)
    for a, i, j in product(range(2), repeat=3):
        assert oracles.nc_equal(oracles.to_sympy(ic.gamma[a][i][j]), G[a][i][j]), (a, i, j)
    # and it is the Levi-Civita connection of the induced metric
    lc = levi_civita(e.target, e.h_target)
    assert lc.gamma == ic.gamma


@pytest.mark.parametrize("mode,params", MODES)
def test_mean_curvature_matches_oracle(mode, params):
    e, _, sff = _tables(mode, params)
    H = mean_curvature(e, sff)
    want = oracles.mean_curvature_e3(oracles.frac(LAM2[params]), mode)
    assert oracles.nc_equal(oracles.to_sympy(H.values[0]), want)


@pytest.mark.parametrize("mode,params", MODES)
def test_mean_curvature_vanishes_on_tangent_vectors(mode, params):
    e, _, sff = _tables(mode, params)
    x = parse_element("Z * W + t", e.source.algebra)
    for i in range(2):
        assert not mean_curvature_at(e, sff, vright(e.psi_vector(i), x))


def test_minimality_verdicts():
    verdicts = {}
    for mode, params in MODES:
        e, _, sff = _tables(mode, params)
        verdicts[(mode, params)] = is_minimal(mean_curvature(e, sff))
    assert verdicts[("one", "half")].minimal
    assert verdicts[("one", "half")].obstructions == ()
    v = verdicts[("one", "unbalanced")]
    assert not v.minimal and v.obstructions[0][1].render() == "7/25"
    tk = torus_algebra(formal=True)
    v = verdicts[("formal", "half")]
    assert not v.minimal and v.obstructions[0][1] == parse_element("-K_3", tk)
    v = verdicts[("formal", "unbalanced")]
    assert v.obstructions[0][1] == parse_element("7/25*K - K_3", tk)


def test_strip_invertible_right():
    tk = torus_algebra(formal=True)
    x = parse_element("K_3 * Kinv * Kinv", tk)
    assert strip_invertible_right(x) == parse_element("K_3", tk)
    assert strip_invertible_right(parse_element("U", torus_algebra())) == \
        parse_element("U", torus_algebra())


@pytest.mark.parametrize("mode,params", [("one", "unbalanced"), ("formal", "half")])
def test_gauss_equation(mode, params):
    e, conn, sff = _tables(mode, params)
    rep = gauss_equation_check(e, conn, induced_connection(e, conn), sff)
    assert rep.ok, rep.failures()
    assert len(rep.checks) == 16


def test_identity_embedding_of_flat_torus():
    calc = torus_calculus(torus_algebra())
    h = flat_torus_metric(calc)
    e = make_embedding(identity_hom(calc), [], h)
    conn = levi_civita(calc, h)
    sff = gauss_weingarten(e, conn)
    assert all(not any(v) for row in sff.alpha for v in row)
    assert gauss_equation_check(e, conn, induced_connection(e, conn), sff).ok
    assert is_minimal(mean_curvature(e, sff)).minimal


@pytest.mark.parametrize("A", [[[1, 0], [0, 1]], [[1, 1], [0, 1]], [[2, 0], [0, 1]]])
@pytest.mark.parametrize("mode,params", [("one", "unbalanced"), ("formal", "unbalanced")])
def test_mean_curvature_basis_independence(A, mode, params):
    e, conn, _ = _tables(mode, params)
    assert mean_curvature_basis_independence_check(e, conn, A).ok


def test_singular_basis_change_is_rejected():
    e, conn, _ = _tables("one", "half")
    with pytest.raises(SingularMatrix):
        mean_curvature_basis_independence_check(e, conn, [[1, 2], [2, 4]])
