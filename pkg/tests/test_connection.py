"""Levi-Civita connections, pseudo-Riemannian checks, curvature, gradient and Laplacian."""
from itertools import product

import pytest

import oracles
from builders import sphere
from nccalc.calculus import metric_eval
from nccalc.connection import (curvature, grad, laplace, levi_civita,
                               verify_pseudo_riemannian)
from nccalc.errors import RankMismatch
from nccalc.expr import parse_element
from nccalc.models import flat_torus_metric, torus_algebra, torus_calculus

TORUS = torus_calculus(torus_algebra())


def test_flat_torus_christoffels_vanish():
    h = flat_torus_metric(TORUS, (2, 3))
    conn = levi_civita(TORUS, h)
    assert all(not g for plane in conn.gamma for row in plane for g in row)
    assert all(not any(v) for v in curvature(conn).values())


@pytest.mark.parametrize("mode", ["one", "formal", "element"])
def test_sphere_christoffels_match_oracle(mode):
    _, _, conn = sphere(mode)
    G = oracles.sphere_lc(mode)
    for p, b, c in product(range(3), repeat=3):
        assert oracles.nc_equal(oracles.to_sympy(conn.gamma[p][b][c]), G[p][b][c]), (p, b, c)


def test_sphere_round_christoffels():
    calc, _, conn = sphere("one")
    el = lambda s: parse_element(s, calc.algebra)
    # ∇_1 E_1 = -E_3, ∇_3 E_1 = E_1 (1 - t), ∇_1 E_3 = E_1 (1 - t)
    assert conn.on_basis(0, 0) == (el("0"), el("0"), el("-1"))
    assert conn.on_basis(2, 0) == (el("1 - t"), el("0"), el("0"))
    assert conn.on_basis(0, 2) == (el("1 - t"), el("0"), el("0"))
    assert conn.on_basis(1, 1) == (el("0"), el("0"), el("1"))
    assert conn.on_basis(2, 2) == (el("0"), el("0"), el("1 - 2*t"))


@pytest.mark.parametrize("mode", ["one", "formal", "element"])
def test_levi_civita_is_pseudo_riemannian(mode):
    calc, h, conn = sphere(mode)
    rep = verify_pseudo_riemannian(calc, h, conn)
    assert rep.ok, rep.failures()


def test_perturbed_connection_fails_metric_compatibility():
    calc, h, conn = sphere("formal")
    bad = conn.perturbed(0, 0, 0, calc.algebra.gen("K"))
    failed = {c.name for c in verify_pseudo_riemannian(calc, h, bad).failures()}
    assert "metric compatibility" in failed
    assert "Koszul identity" in failed


def test_perturbation_breaking_torsion():
    calc, h, conn = sphere("one")
    bad = conn.perturbed(0, 0, 1, calc.algebra.one())
    failed = {c.name for c in verify_pseudo_riemannian(calc, h, bad).failures()}
    assert "torsion free" in failed


def test_round_sphere_has_constant_curvature():
    # K = 1: R(∂_a, ∂_b) E_c = E_a h_bc - E_b h_ac
    calc, h, conn = sphere("one")
    E = [calc.basis_vector(a) for a in range(3)]
    R = curvature(conn)
    for a, b, c in product(range(3), repeat=3):
        want = tuple(E[a][p] * h.entries[b][c] - E[b][p] * h.entries[a][c] for p in range(3))
        assert R[(a, b, c)] == want
    assert R[(0, 1, 1)] == (parse_element("1 - t", calc.algebra), calc.algebra.zero(),
                            calc.algebra.zero())


@pytest.mark.parametrize("mode", ["one", "element"])
def test_curvature_matches_oracle(mode):
    _, _, conn = sphere(mode)
    G = oracles.sphere_lc(mode)
    R = curvature(conn)
    for a, b, c in [(0, 1, 1), (0, 2, 0), (1, 2, 2), (2, 0, 1)]:
        want = oracles.curvature_vector(G, oracles.SPHERE_DERIVATIONS, a, b, c)
        assert all(oracles.nc_equal(oracles.to_sympy(R[(a, b, c)][p]), want[p]) for p in range(3))


def test_gradient():
    calc, h, _ = sphere("one")
    alg = calc.algebra
    assert grad(calc, h, alg.one()) == calc.zero_vector()
    # grad t = E_3 h^33 ∂_3 t = E_3 * 2
    assert grad(calc, h, alg.t()) == (alg.zero(), alg.zero(), parse_element("2", alg))
    m = calc.basis_vector(2)
    assert metric_eval(h, m, grad(calc, h, alg.t())) == calc.d(2)(alg.t())


def test_flat_torus_laplacian():
    conn = levi_civita(TORUS, flat_torus_metric(TORUS))
    h = flat_torus_metric(TORUS)
    el = lambda s: parse_element(s, TORUS.algebra)
    assert laplace(conn, h, el("U")) == el("-U")
    assert laplace(conn, h, el("U^2")) == el("-4*U^2")
    assert laplace(conn, h, el("U*V")) == el("-2*U*V")
    assert laplace(conn, h, el("1")) == TORUS.algebra.zero()


def test_laplacian_on_the_round_sphere():
    # Δt = div(2 E_3) = 2 sum_a Γ^a_a3, with trace (1 - t) - t + (1 - 2t)
    calc, h, conn = sphere("one")
    alg = calc.algebra
    trace = sum((conn.gamma[a][a][2] for a in range(3)), alg.zero())
    assert trace == parse_element("2 - 4*t", alg)
    assert laplace(conn, h, alg.t()) == parse_element("4 - 8*t", alg)


def test_rank_mismatch_in_nabla():
    _, _, conn = sphere("one")
    with pytest.raises(RankMismatch):
        conn.nabla(0, (conn.calculus.algebra.one(),))
