"""Mean curvature of the embedded torus for several unit pairs (λ, μ).

For each pair the normal component H(E_3) is printed for the constant
factor K = 1, for K = |Z|^2 |W|^2 and for a formal conformal factor,
together with the minimality verdict.

    python3 scripts/minimal_torus_scan.py
    python3 scripts/minimal_torus_scan.py --pair "3/5" "4/5*i"
"""
from __future__ import annotations

import argparse

from nccalc.connection import levi_civita
from nccalc.expr import parse_scalar
from nccalc.models import (check_unit_sphere_params, clifford_hom, sphere_algebra,
                           sphere_calculus, sphere_metric, torus_algebra, torus_calculus)
from nccalc.morphism import make_embedding
from nccalc.submanifold import gauss_weingarten, is_minimal, mean_curvature

# Gaussian-rational points on the unit circle pair |λ|^2 + |μ|^2 = 1
PAIRS = [("(1 + i)/2", "(1 + i)/2"), ("4/5", "3/5*i"), ("3/5", "4/5*i"),
         ("5/13", "12/13"), ("12/13", "5/13*i")]


def factor(alg, mode):
    if mode == "one":
        return alg.one()
    if mode == "formal":
        return alg.gen("K")
    return alg.t() * (alg.one() - alg.t())


def mean_curvature_e3(lam, mu, mode):
    alg = sphere_algebra(formal=mode == "formal")
    calc = sphere_calculus(alg)
    h = sphere_metric(calc, factor(alg, mode))
    tcalc = torus_calculus(torus_algebra(formal=mode == "formal"))
    hom = clifford_hom(calc, tcalc, lam, mu)
    e = make_embedding(hom, [(alg.zero(), alg.zero(), alg.one())], h)
    H = mean_curvature(e, gauss_weingarten(e, levi_civita(calc, h)))
    return H.values[0], is_minimal(H).minimal


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pair", nargs=2, action="append", metavar=("LAMBDA", "MU"))
    args = p.parse_args(argv)
    pairs = args.pair or PAIRS
    for lam_text, mu_text in pairs:
        lam, mu = parse_scalar(lam_text), parse_scalar(mu_text)
        try:
            check_unit_sphere_params(lam, mu)
        except Exception as exc:
            print(f"λ = {lam.render()}, μ = {mu.render()}: skipped ({exc})")
            continue
        print(f"λ = {lam.render()}, μ = {mu.render()}, |λ|^2 = {(lam * lam.conj()).render()}")
        for mode in ("one", "element", "formal"):
            value, minimal = mean_curvature_e3(lam, mu, mode)
            verdict = "minimal" if minimal else "not minimal"
            print(f"  K {mode:>7}: H(E_3) = {value.render():<28} {verdict}")


if __name__ == "__main__":
    main()
