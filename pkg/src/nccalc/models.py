"""Built-in calculi, metrics and homomorphisms for the torus and the 3-sphere."""
from __future__ import annotations

from fractions import Fraction

from .calculus import HermitianMetric, LieAlgebraSpec, RealCalculus
from .errors import RelationViolation
from .qalgebra import SPHERE3LOC, TORUS, AlgebraSpec, Derivation
from .scalars import I, CentralFn, Scalar


def unit_vector(n, a):
    return tuple(Fraction(1) if b == a else Fraction(0) for b in range(n))


def torus_algebra(formal=False, q_one=False):
    return AlgebraSpec(TORUS, 3 if formal else 0, q_one)


def sphere_algebra(formal=False, q_one=False, base=SPHERE3LOC):
    return AlgebraSpec(base, 3 if formal else 0, q_one)


def torus_calculus(algebra=None):
    """``δ_1 U = iU, δ_1 V = 0, δ_2 U = 0, δ_2 V = iV``; on ``K``: ``δ_i K = K_i``."""
    alg = algebra or torus_algebra()
    U, V = alg.gen("U"), alg.gen("V")
    n = alg.formal_indices
    d1 = Derivation(alg, {"U": U.scale(I), "V": alg.zero()},
                    unit_vector(n, 0) if n else None, name="δ1")
    d2 = Derivation(alg, {"U": alg.zero(), "V": V.scale(I)},
                    unit_vector(n, 1) if n else None, name="δ2")
    return RealCalculus(alg, LieAlgebraSpec.abelian((d1, d2)),
                        basis_names=("e_1", "e_2"), name="torus")


def sphere_calculus(algebra=None):
    """Hermitian derivations on the 3-sphere.

    ``∂_1 Z = iZ``, ``∂_2 W = iW``, ``∂_3 Z = Z(1-t)``, ``∂_3 W = -Wt`` and
    ``∂_a K = K_a`` on the formal conformal factor.
    """
    alg = algebra or sphere_algebra()
    Z, W = alg.gen("Z"), alg.gen("W")
    t = CentralFn.t()
    n = alg.formal_indices
    vec = (lambda a: unit_vector(n, a)) if n else (lambda a: None)
    d1 = Derivation(alg, {"Z": Z.scale(I), "W": alg.zero()}, vec(0), name="∂1")
    d2 = Derivation(alg, {"Z": alg.zero(), "W": W.scale(I)}, vec(1), name="∂2")
    d3 = Derivation(alg, {"Z": Z.scale(1 - t), "W": -W.scale(t)}, vec(2), name="∂3")
    return RealCalculus(alg, LieAlgebraSpec.abelian((d1, d2, d3)), name="sphere")


def conformal_factor(algebra, mode="one", element=None):
    """The conformal factor ``K`` as an element: 1, the formal symbol, or a given element."""
    if mode == "one":
        return algebra.one()
    if mode == "formal":
        return algebra.gen("K")
    if mode == "element":
        if element is None:
            raise ValueError("element mode needs an explicit conformal factor")
        return element
    raise ValueError(f"unknown conformal-factor mode {mode!r}")


def sphere_metric(calc, K=None):
    """``diag(t, 1-t, t(1-t)) * K``, inverse registered entrywise."""
    alg = calc.algebra
    K = alg.one() if K is None else K
    t = CentralFn.t()
    diag = [alg.one().scale(c) * K for c in (t, 1 - t, t * (1 - t))]
    return HermitianMetric.diagonal(diag)


def flat_torus_metric(calc, entries=(1, 1)):
    alg = calc.algebra
    return HermitianMetric.diagonal([alg.const(Scalar(Fraction(x))) for x in entries])


# ---------------------------------------------------------------- homomorphisms

def check_unit_sphere_params(lam, mu):
    if (lam * lam.conj() + mu * mu.conj()) != Scalar(1):
        raise RelationViolation("|λ|^2 + |μ|^2 must equal 1", ["WW* = 1 - ZZ*"])


def clifford_map(source, target, lam, mu):
    """``φ(Z) = λU``, ``φ(W) = μV``, formal symbols to their torus copies."""
    from .morphism import AlgebraMap
    images = {"Z": target.gen("U").scale(lam), "W": target.gen("V").scale(mu)}
    for sym in source.formal_symbols():
        images[sym] = target.gen(sym)
    return AlgebraMap(source, target, images)


def clifford_hom(sphere_calc, torus_calc, lam, mu):
    """The torus embedded in the 3-sphere with ``ψ(δ_i) = ∂_i``."""
    from .morphism import construct_hom
    phi = clifford_map(sphere_calc.algebra, torus_calc.algebra, lam, mu)
    psi = [[1, 0], [0, 1], [0, 0]]
    return construct_hom(sphere_calc, torus_calc, phi, psi)


def torus_automorphism(algebra, a, b, c, d):
    """``α(U) = U^a V^b``, ``α(V) = U^c V^d`` for ``ad - bc = 1``."""
    from .morphism import AlgebraMap
    if a * d - b * c != 1:
        raise ValueError("SL(2,Z) matrix must have determinant 1")
    images = {"U": algebra.monomial((a, b)), "V": algebra.monomial((c, d))}
    for sym in algebra.formal_symbols():
        images[sym] = algebra.gen(sym)
    return AlgebraMap(algebra, algebra, images)


def torus_automorphism_inverse(algebra, a, b, c, d):
    """``α^{-1}(U) = q^{bd(a-c-1)/2} U^d V^{-b}``, ``α^{-1}(V) = q^{ac(d-b-1)/2} U^{-c} V^a``."""
    from .morphism import AlgebraMap
    if a * d - b * c != 1:
        raise ValueError("SL(2,Z) matrix must have determinant 1")
    images = {"U": algebra.monomial((d, -b)) * algebra.q_power(b * d * (a - c - 1)),
              "V": algebra.monomial((-c, a)) * algebra.q_power(a * c * (d - b - 1))}
    for sym in algebra.formal_symbols():
        images[sym] = algebra.gen(sym)
    return AlgebraMap(algebra, algebra, images)


def sl2z_psi(a, b, c, d):
    """Matrix of ``ψ(δ_1) = dδ_1 - cδ_2``, ``ψ(δ_2) = -bδ_1 + aδ_2`` (columns)."""
    return [[d, -b], [-c, a]]


def sl2z_hom(torus_calc, a, b, c, d):
    """Automorphism hom with algebra map ``α^{-1}``; ψ and ψ̂ follow from it."""
    from .morphism import construct_hom, iso_psi_from_phi
    alg = torus_calc.algebra
    phi = torus_automorphism_inverse(alg, a, b, c, d)
    phi_inv = torus_automorphism(alg, a, b, c, d)
    psi = iso_psi_from_phi(torus_calc, torus_calc, phi, phi_inv)
    return construct_hom(torus_calc, torus_calc, phi, psi)
