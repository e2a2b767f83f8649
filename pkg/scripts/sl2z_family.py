"""SL(2,Z) reparametrizations of the torus composed with its embedding.

For each matrix (a b; c d) the automorphism homomorphism is built from
φ = α^{-1}, its derivation map ψ is recovered from φ alone, and the
embedding is precomposed with it.  Mean curvature of the composite is
compared with the original.

    python3 scripts/sl2z_family.py
    python3 scripts/sl2z_family.py --matrix 3 2 1 1 --lam "4/5" --mu "3/5*i"
"""
from __future__ import annotations

import argparse

from nccalc.connection import levi_civita
from nccalc.expr import parse_scalar
from nccalc.models import (clifford_hom, sl2z_hom, sphere_algebra, sphere_calculus,
                           sphere_metric, torus_algebra, torus_calculus)
from nccalc.morphism import compose, make_embedding
from nccalc.submanifold import gauss_weingarten, mean_curvature

MATRICES = [(1, 1, 0, 1), (2, 1, 1, 1), (1, 0, 1, 1), (0, -1, 1, 0)]


def clifford_preimage(src, lam, mu, m, n):
    """``x`` with ``φ(x) = U^m V^n`` for ``φ(Z) = λU``, ``φ(W) = μV``."""
    u = src.gen("Z").scale(lam.inverse()) if m > 0 else src.gen("Z*").scale(lam.conj().inverse())
    v = src.gen("W").scale(mu.inverse()) if n > 0 else src.gen("W*").scale(mu.conj().inverse())
    x = src.one()
    for _ in range(abs(m)):
        x = x * u
    for _ in range(abs(n)):
        x = x * v
    return x


def torus_preimages(src, lam, mu, a, b, c, d):
    """Preimages of U, V under α^{-1} ∘ φ: the Clifford preimages of α(U), α(V)."""
    return {"U": clifford_preimage(src, lam, mu, a, b),
            "V": clifford_preimage(src, lam, mu, c, d)}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--matrix", nargs=4, type=int, action="append", metavar=("A", "B", "C", "D"))
    p.add_argument("--lam", default="(1 + i)/2")
    p.add_argument("--mu", default="(1 + i)/2")
    args = p.parse_args(argv)
    lam, mu = parse_scalar(args.lam), parse_scalar(args.mu)

    alg = sphere_algebra()
    calc = sphere_calculus(alg)
    h = sphere_metric(calc)
    conn = levi_civita(calc, h)
    tcalc = torus_calculus(torus_algebra())
    f = clifford_hom(calc, tcalc, lam, mu)
    normal = [(alg.zero(), alg.zero(), alg.one())]
    e0 = make_embedding(f, normal, h)
    H0 = mean_curvature(e0, gauss_weingarten(e0, conn)).values[0]
    print(f"λ = {lam.render()}, μ = {mu.render()}: H(E_3) = {H0.render()}")

    for a, b, c, d in args.matrix or MATRICES:
        g = sl2z_hom(tcalc, a, b, c, d)
        psi = [[str(x) for x in row] for row in g.psi]
        print(f"({a} {b}; {c} {d})  ψ = {psi}")
        for i in range(2):
            img = g.psi_hat(tcalc.basis_vector(i))
            coords = ", ".join(x.render() for x in img)
            print(f"    ψ̂(e_{i + 1}) = ({coords})")
        fg = compose(f, g)
        e = make_embedding(fg, normal, h, preimages=torus_preimages(alg, lam, mu, a, b, c, d))
        H = mean_curvature(e, gauss_weingarten(e, conn)).values[0]
        same = "unchanged" if H == H0 else "CHANGED"
        print(f"    φ(Z) = {fg.phi(alg.gen('Z')).render()},  H(E_3) = {H.render()}  {same}")


if __name__ == "__main__":
    main()
