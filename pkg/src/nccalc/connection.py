"""Levi-Civita connection, its verification, curvature and the Laplacian."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .calculus import (HermitianMetric, RealCalculus, metric_eval, vadd, vsub, vzero)
from .errors import RankMismatch
from .report import Report
from .scalars import Scalar

HALF = Scalar(Fraction(1, 2))


@dataclass(frozen=True)
class Connection:
    """Christoffel table ``gamma[a][b][c] = Γ^a_bc`` with ``∇_b E_c = E_a Γ^a_bc``."""

    calculus: RealCalculus
    gamma: tuple

    @property
    def rank(self):
        return self.calculus.rank

    def nabla(self, b, m):
        """``∇_{d_b} m``."""
        n = self.rank
        if len(m) != n:
            raise RankMismatch(f"vector of length {len(m)} for rank {n}")
        d = self.calculus.d(b)
        out = []
        for a in range(n):
            acc = d(m[a])
            for c in range(n):
                g = self.gamma[a][b][c]
                if g and m[c]:
                    acc = acc + g * m[c]
            out.append(acc)
        return tuple(out)

    def nabla_along(self, coeffs, m):
        """``∇_X m`` for ``X = sum_b coeffs[b] d_b`` with rational coefficients."""
        out = vzero(self.calculus.algebra, self.rank)
        for b, x in enumerate(coeffs):
            if x:
                out = vadd(out, tuple(v.scale(Scalar(Fraction(x))) for v in self.nabla(b, m)))
        return out

    def on_basis(self, b, c):
        """``∇_b E_c`` as a coordinate vector."""
        return tuple(self.gamma[a][b][c] for a in range(self.rank))

    def perturbed(self, a, b, c, delta):
        g = [[list(row) for row in plane] for plane in self.gamma]
        g[a][b][c] = g[a][b][c] + delta
        return Connection(self.calculus, tuple(tuple(tuple(r) for r in p) for p in g))


def koszul_table(calc: RealCalculus, h: HermitianMetric):
    """``X[d][b][c] = h(E_d, ∇_b E_c)`` from the Koszul formula."""
    n = calc.rank
    f = calc.lie.structure
    H = h.entries
    alg = calc.algebra
    dh = [[[calc.d(a)(H[b][c]) for c in range(n)] for b in range(n)] for a in range(n)]
    X = [[[None] * n for _ in range(n)] for _ in range(n)]
    for d, b, c in product(range(n), repeat=3):
        acc = dh[b][c][d] + dh[c][b][d] - dh[d][b][c]
        for r in range(n):
            if f[c][d][r]:
                acc = acc - H[b][r].scale(Scalar(f[c][d][r]))
            if f[d][b][r]:
                acc = acc + H[c][r].scale(Scalar(f[d][b][r]))
            if f[b][c][r]:
                acc = acc + H[d][r].scale(Scalar(f[b][c][r]))
        X[d][b][c] = acc.scale(HALF) if acc else alg.zero()
    return X


def levi_civita(calc: RealCalculus, h: HermitianMetric) -> Connection:
    """The unique torsion-free metric connection, ``Γ^p_bc = h^{pd} X_dbc``."""
    calc.require_free()
    n = calc.rank
    if h.rank != n:
        raise RankMismatch(f"metric rank {h.rank} for module rank {n}")
    hinv = h.require_inverse()
    X = koszul_table(calc, h)
    alg = calc.algebra
    gamma = [[[alg.zero()] * n for _ in range(n)] for _ in range(n)]
    for p, b, c in product(range(n), repeat=3):
        acc = alg.zero()
        for d in range(n):
            if hinv[p][d] and X[d][b][c]:
                acc = acc + hinv[p][d] * X[d][b][c]
        gamma[p][b][c] = acc
    return Connection(calc, tuple(tuple(tuple(r) for r in plane) for plane in gamma))


def verify_pseudo_riemannian(calc: RealCalculus, h: HermitianMetric, conn: Connection) -> Report:
    """Metric compatibility, torsion, Koszul identity and reality on basis triples."""
    rep = Report("pseudo-Riemannian")
    n = calc.rank
    E = [calc.basis_vector(a) for a in range(n)]
    nab = [[conn.nabla(b, E[c]) for c in range(n)] for b in range(n)]
    H = h.entries
    f = calc.lie.structure

    bad = []
    for a, b, c in product(range(n), repeat=3):
        lhs = calc.d(a)(H[b][c])
        rhs = metric_eval(h, nab[a][b], E[c]) + metric_eval(h, E[b], nab[a][c])
        if lhs != rhs:
            bad.append(f"({a + 1},{b + 1},{c + 1})")
    rep.add("metric compatibility", not bad, " ".join(bad))

    bad = []
    for a, b in product(range(n), repeat=2):
        br = calc.anchor_vector([f[a][b][r] for r in range(n)])
        if vsub(vsub(nab[a][b], nab[b][a]), br) != vzero(calc.algebra, n):
            bad.append(f"({a + 1},{b + 1})")
    rep.add("torsion free", not bad, " ".join(bad))

    bad = []
    X = koszul_table(calc, h)
    for b, c, d in product(range(n), repeat=3):
        if metric_eval(h, nab[b][c], E[d]) != X[d][b][c]:
            bad.append(f"({b + 1},{c + 1},{d + 1})")
    rep.add("Koszul identity", not bad, " ".join(bad))

    bad = []
    for a, b, c in product(range(n), repeat=3):
        v = metric_eval(h, nab[a][b], E[c])
        if v.star() != v:
            bad.append(f"({a + 1},{b + 1},{c + 1})")
    rep.add("reality", not bad, " ".join(bad))
    return rep


def curvature_along(conn: Connection, x, y, m):
    """``R(X, Y) m`` for rational derivation coefficient vectors ``x``, ``y``."""
    lie = conn.calculus.lie
    xy = conn.nabla_along(x, conn.nabla_along(y, m))
    yx = conn.nabla_along(y, conn.nabla_along(x, m))
    br = conn.nabla_along(lie.bracket_coeffs(x, y), m)
    return vsub(vsub(xy, yx), br)


def _unit(n, a):
    return [Fraction(1) if b == a else Fraction(0) for b in range(n)]


def curvature(conn: Connection):
    """Table ``R[(a, b, c)] = R(d_a, d_b) E_c`` for all index triples."""
    calc = conn.calculus
    n = calc.rank
    out = {}
    for a, b in product(range(n), repeat=2):
        if a > b:
            continue
        for c in range(n):
            if a == b:
                out[(a, b, c)] = vzero(calc.algebra, n)
                continue
            r = curvature_along(conn, _unit(n, a), _unit(n, b), calc.basis_vector(c))
            out[(a, b, c)] = r
            out[(b, a, c)] = tuple(-v for v in r)
    return out


def grad(calc: RealCalculus, h: HermitianMetric, x):
    """``grad(x) = E_a h^{ab} d_b(x)``."""
    hinv = h.require_inverse()
    n = calc.rank
    dx = [calc.d(b)(x) for b in range(n)]
    alg = calc.algebra
    return tuple(sum((hinv[a][b] * dx[b] for b in range(n) if hinv[a][b] and dx[b]), alg.zero())
                 for a in range(n))


def div(conn: Connection, m):
    """``div(m) = sum_a (∇_{d_a} m)^a``."""
    alg = conn.calculus.algebra
    return sum((conn.nabla(a, m)[a] for a in range(conn.rank)), alg.zero())


def laplace(conn: Connection, h: HermitianMetric, x):
    return div(conn, grad(conn.calculus, h, x))
