"""Metrics, vectors, real metric calculus validation and basis changes."""
import pytest

from nccalc.calculus import (HermitianMetric, RealCalculus, change_basis, metric_eval,
                             transform_vector, validate_real_metric_calculus, vadd, vright)
from nccalc.errors import NotFree, RankMismatch, SingularMatrix
from nccalc.expr import parse_element
from nccalc.models import (flat_torus_metric, sphere_algebra, sphere_calculus, sphere_metric,
                           torus_algebra, torus_calculus)

S = sphere_algebra()
SK = sphere_algebra(formal=True)
CALC = sphere_calculus(S)
H = sphere_metric(CALC)


def el(text, alg=S):
    return parse_element(text, alg)


def test_metric_on_basis_vectors():
    E = [CALC.basis_vector(a) for a in range(3)]
    assert metric_eval(H, E[0], E[0]) == el("t")
    assert metric_eval(H, E[0], E[1]) == S.zero()
    assert metric_eval(H, E[2], E[2]) == el("t*(1 - t)")


def test_metric_is_conjugate_linear_in_first_slot():
    E = [CALC.basis_vector(a) for a in range(3)]
    z = el("Z")
    assert metric_eval(H, vright(E[0], z), E[0]) == z.star() * el("t")
    assert metric_eval(H, E[0], vright(E[0], z)) == el("t") * z
    m = vadd(vright(E[0], z), E[1])
    assert metric_eval(H, m, m) == z.star() * el("t") * z + el("1 - t")


def test_inverse_of_diagonal_metric_is_registered():
    inv = H.require_inverse()
    assert inv[0][0] == el("1/t")
    assert inv[2][2] == el("1/(t*(1 - t))")


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        metric_eval(H, (S.one(),), (S.one(),))
    with pytest.raises(RankMismatch):
        HermitianMetric.make([[S.one(), S.zero()]])


def test_missing_inverse():
    z = el("Z")
    h = HermitianMetric.make([[S.one(), z], [z.star(), S.one()]])
    with pytest.raises(SingularMatrix):
        h.require_inverse()


def test_sphere_and_torus_validate():
    calc_k = sphere_calculus(SK)
    torus_k = torus_calculus(torus_algebra(formal=True))
    K = torus_k.algebra.gen("K")
    half = parse_element("1/2", torus_k.algebra)
    for calc, h in [(CALC, H),
                    (calc_k, sphere_metric(calc_k, SK.gen("K"))),
                    (torus_calculus(), flat_torus_metric(torus_calculus())),
                    (torus_k, HermitianMetric.diagonal([half * K, half * K]))]:
        rep = validate_real_metric_calculus(calc, h)
        assert rep.ok, rep.failures()


def test_non_hermitian_entry_fails_validation():
    e = [list(r) for r in H.entries]
    z = el("Z")
    e[0][1], e[1][0] = z, z.star()
    h = HermitianMetric.make(e, H.inverse)
    rep = validate_real_metric_calculus(CALC, h)
    failed = {c.name for c in rep.failures()}
    assert "hermitian entries" in failed
    assert "registered inverse" in failed
    assert "h_ab* = h_ba" not in failed


def test_wrong_inverse_fails_validation():
    inv = [list(r) for r in H.inverse]
    inv[0][0] = S.one()
    rep = validate_real_metric_calculus(CALC, HermitianMetric.make(H.entries, inv))
    assert [c.name for c in rep.failures()] == ["registered inverse"]


def test_rank_mismatch_is_reported():
    rep = validate_real_metric_calculus(CALC, flat_torus_metric(torus_calculus()))
    assert not rep.ok


def test_change_basis_transforms_metric_and_vectors():
    A = [[1, 1, 0], [0, 1, 0], [0, 0, 2]]
    calc2, h2 = change_basis(CALC, H, A)
    # E~_1 = E_1 + E_2, so h~_11 = t + (1 - t) = 1
    assert h2.entries[0][0] == S.one()
    assert h2.entries[0][1] == el("1 - t")
    assert h2.entries[2][2] == el("4*t*(1 - t)")
    assert validate_real_metric_calculus(calc2, h2).ok
    m = (el("Z"), el("W"), el("t"))
    n = (el("W*"), S.one(), el("Z*"))
    assert metric_eval(h2, transform_vector(A, m), transform_vector(A, n)) == metric_eval(H, m, n)
    x = el("Z * W")
    assert calc2.d(0)(x) == CALC.d(0)(x) + CALC.d(1)(x)


def test_change_basis_requires_free_module():
    calc = RealCalculus(S, CALC.lie, anchor=((1, 0, 0), (0, 1, 0), (0, 0, 2)))
    assert not calc.is_free
    with pytest.raises(NotFree):
        change_basis(calc, H, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
