"""Gauss and Weingarten decomposition, induced connection, Gauss' equation,
mean curvature and minimality."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .calculus import change_basis, metric_eval, vneg
from .connection import Connection, curvature_along
from .linalg import inverse as rat_inverse, matmul, transpose
from .morphism import Embedding, construct_hom, make_embedding, project
from .report import Report


def _unit(n, i):
    return [Fraction(1) if j == i else Fraction(0) for j in range(n)]


def nabla_psi(e: Embedding, conn: Connection, i, m):
    """``∇_{ψ(δ_i)} m``."""
    return conn.nabla_along(e.hom.psi_coeffs(i), m)


def tangential_part(e, conn, i, m):
    """``L(δ_i, m) = P(∇_{ψ(δ_i)} m)``."""
    return project(e, nabla_psi(e, conn, i, m))[0]


def alpha(e, conn, i, m):
    """Second fundamental form ``α(δ_i, m) = Π(∇_{ψ(δ_i)} m)``."""
    return project(e, nabla_psi(e, conn, i, m))[1]


def weingarten(e, conn, xi, i):
    """``A_ξ(δ_i) = -P(∇_{ψ(δ_i)} ξ)``."""
    return vneg(project(e, nabla_psi(e, conn, i, xi))[0])


def normal_connection(e, conn, i, xi):
    """``D_{δ_i} ξ = Π(∇_{ψ(δ_i)} ξ)``."""
    return project(e, nabla_psi(e, conn, i, xi))[1]


@dataclass(frozen=True)
class GaussWeingarten:
    """Tables over target basis indices ``i, j`` and complement index ``k``."""

    alpha: tuple        # alpha[i][j] = α(δ_i, Ψ(δ_j))
    L: tuple            # L[i][j] = L(δ_i, Ψ(δ_j))
    A: tuple            # A[k][i] = A_{ξ_k}(δ_i)
    D: tuple            # D[i][k] = D_{δ_i} ξ_k


def gauss_weingarten(e: Embedding, conn: Connection) -> GaussWeingarten:
    k = e.k
    al, L, A, D = [], [], [], []
    for i in range(k):
        row_a, row_l = [], []
        for j in range(k):
            tang, norm = project(e, nabla_psi(e, conn, i, e.psi_vector(j)))
            row_a.append(norm)
            row_l.append(tang)
        al.append(tuple(row_a))
        L.append(tuple(row_l))
    for xi in e.complement:
        A.append(tuple(weingarten(e, conn, xi, i) for i in range(k)))
    for i in range(k):
        D.append(tuple(normal_connection(e, conn, i, xi) for xi in e.complement))
    return GaussWeingarten(tuple(al), tuple(L), tuple(A), tuple(D))


def induced_connection(e: Embedding, conn: Connection) -> Connection:
    """``∇'_i e_j = ψ̂(L(δ_i, Ψ(δ_j)))``."""
    tgt = e.target
    k = e.k
    gamma = [[[None] * k for _ in range(k)] for _ in range(k)]
    for i, j in product(range(k), repeat=2):
        v = e.hom.psi_hat(tangential_part(e, conn, i, e.psi_vector(j)))
        for a in range(k):
            gamma[a][i][j] = v[a]
    return Connection(tgt, tuple(tuple(tuple(r) for r in p) for p in gamma))


def gauss_equation_check(e: Embedding, conn: Connection, conn_target: Connection,
                         sff: GaussWeingarten = None) -> Report:
    """Both sides of Gauss' equation for every ``(i, j; k, l)``."""
    rep = Report("Gauss equation")
    sff = sff or gauss_weingarten(e, conn)
    h, ht, phi = e.h, e.h_target, e.hom.phi
    n = e.k
    Psi = [e.psi_vector(i) for i in range(n)]
    ebasis = [e.target.basis_vector(i) for i in range(n)]
    cache = {}
    for kk, l in product(range(n), repeat=2):
        x, y = e.hom.psi_coeffs(kk), e.hom.psi_coeffs(l)
        for j in range(n):
            cache[(kk, l, j)] = (curvature_along(conn, x, y, Psi[j]),
                                 curvature_along(conn_target, _unit(n, kk), _unit(n, l), ebasis[j]))
    for i, j, kk, l in product(range(n), repeat=4):
        R, Rt = cache[(kk, l, j)]
        lhs = phi(metric_eval(h, Psi[i], R))
        rhs = (metric_eval(ht, ebasis[i], Rt)
               + phi(metric_eval(h, sff.alpha[l][i], sff.alpha[kk][j]))
               - phi(metric_eval(h, sff.alpha[kk][i], sff.alpha[l][j])))
        rep.add(f"(i,j;k,l)=({i + 1},{j + 1};{kk + 1},{l + 1})", lhs == rhs,
                f"lhs={lhs.render()} rhs={rhs.render()}")
    return rep


@dataclass(frozen=True)
class MeanCurvature:
    """Values ``H(ξ_k)`` on the complement basis; ``__call__`` evaluates anywhere."""

    embedding: Embedding
    sff: GaussWeingarten
    values: tuple

    def __call__(self, m):
        return mean_curvature_at(self.embedding, self.sff, m)


def mean_curvature_at(e: Embedding, sff: GaussWeingarten, m):
    """``H(m) = sum_ij φ(h(m, α(δ_i, Ψ(δ_j)))) h'^{ij}``."""
    hinv = e.h_target.require_inverse()
    phi = e.hom.phi
    out = e.target.algebra.zero()
    for i, j in product(range(e.k), repeat=2):
        if hinv[i][j]:
            v = phi(metric_eval(e.h, m, sff.alpha[i][j]))
            if v:
                out = out + v * hinv[i][j]
    return out


def mean_curvature(e: Embedding, sff: GaussWeingarten) -> MeanCurvature:
    return MeanCurvature(e, sff, tuple(mean_curvature_at(e, sff, xi) for xi in e.complement))


def strip_invertible_right(x):
    """Drop trailing ``Kinv`` factors: ``x u = 0`` iff ``x = 0`` for invertible ``u``."""
    alg = x.algebra
    if not alg.formal:
        return x
    K = alg.gen("K")
    for _ in range(8):
        if not any(word and word[-1] == "Kinv" for (_, word) in x.terms):
            break
        x = x * K
    return x


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    obstructions: tuple   # (complement index, stripped obstruction) for nonzero values


def is_minimal(H: MeanCurvature) -> MinimalityVerdict:
    obs = tuple((k, strip_invertible_right(v)) for k, v in enumerate(H.values) if v)
    return MinimalityVerdict(not obs, obs)


def rebase_embedding(e: Embedding, A):
    """Same embedding seen through the target basis ``δ~_i = sum_j A[i][j] δ_j``."""
    tgt, _ = change_basis(e.target, e.h_target, A)
    P = matmul([list(r) for r in e.hom.psi], transpose([[Fraction(x) for x in r] for r in A]))
    hom = construct_hom(e.source, tgt, e.hom.phi, P)
    return make_embedding(hom, e.complement, e.h, None, e.isometric, e.preimages)


def mean_curvature_basis_independence_check(e: Embedding, conn: Connection, A) -> Report:
    rep = Report("mean curvature basis independence")
    rat_inverse([[Fraction(x) for x in r] for r in A])
    H0 = mean_curvature(e, gauss_weingarten(e, conn))
    e2 = rebase_embedding(e, A)
    H1 = mean_curvature(e2, gauss_weingarten(e2, conn))
    for k, (a, b) in enumerate(zip(H0.values, H1.values)):
        rep.add(f"H(ξ{k + 1})", a == b, f"{a.render()} vs {b.render()}")
    return rep
