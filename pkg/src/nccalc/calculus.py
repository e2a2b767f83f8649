"""Real calculi over the supported algebras, hermitian metrics, module vectors.

Modules are free with basis ``E_1..E_n``; a module element is the tuple of
its coordinates in the right-module convention ``m = E_a m^a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotFree, RankMismatch, RelationViolation, SingularMatrix
from .linalg import identity, inverse as rat_inverse, is_identity, transpose
from .qalgebra import (AlgebraSpec, AlgElement, Derivation, check_derivation_well_defined,
                       hermiticity_defects, invert)
from .report import Report
from .scalars import Scalar

Vector = tuple  # of AlgElement


# ---------------------------------------------------------------- vectors

def vzero(algebra, n) -> Vector:
    z = algebra.zero()
    return (z,) * n


def vbasis(algebra, n, a) -> Vector:
    """Coordinates of ``E_a`` (0-based index)."""
    return tuple(algebra.one() if b == a else algebra.zero() for b in range(n))


def vconst(algebra, coeffs) -> Vector:
    return tuple(algebra.const(Scalar(Fraction(c))) for c in coeffs)


def vadd(m, n) -> Vector:
    if len(m) != len(n):
        raise RankMismatch(f"vector lengths {len(m)} and {len(n)}")
    return tuple(x + y for x, y in zip(m, n))


def vsub(m, n) -> Vector:
    if len(m) != len(n):
        raise RankMismatch(f"vector lengths {len(m)} and {len(n)}")
    return tuple(x - y for x, y in zip(m, n))


def vneg(m) -> Vector:
    return tuple(-x for x in m)


def vright(m, a) -> Vector:
    """``m * a`` for an algebra element ``a``."""
    return tuple(x * a for x in m)


def vscale(m, c) -> Vector:
    """Multiply by a central scalar/rational."""
    s = c if isinstance(c, Scalar) else Scalar(Fraction(c))
    return tuple(x.scale(s) for x in m)


def vis_zero(m) -> bool:
    return all(not x for x in m)


def vsum(vectors, algebra, n) -> Vector:
    out = vzero(algebra, n)
    for v in vectors:
        out = vadd(out, v)
    return out


# ---------------------------------------------------------------- Lie algebra

@dataclass(frozen=True)
class LieAlgebraSpec:
    """Basis derivations and structure constants ``f[a][b][c] = f^c_ab``."""

    derivations: tuple
    structure: tuple

    @staticmethod
    def abelian(derivations):
        n = len(derivations)
        f = tuple(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)) for _ in range(n))
        return LieAlgebraSpec(tuple(derivations), f)

    @property
    def dim(self):
        return len(self.derivations)

    def bracket_coeffs(self, x, y):
        """Coefficients of ``[sum x_a d_a, sum y_b d_b]`` in the basis."""
        n = self.dim
        out = [Fraction(0)] * n
        for a, b in product(range(n), repeat=2):
            if x[a] and y[b]:
                for c in range(n):
                    out[c] += x[a] * y[b] * self.structure[a][b][c]
        return out

    def is_abelian(self):
        return all(not v for plane in self.structure for row in plane for v in row)

    def check(self) -> Report:
        rep = Report("Lie algebra")
        n, f = self.dim, self.structure
        anti = all(f[a][b][c] == -f[b][a][c] for a, b, c in product(range(n), repeat=3))
        rep.add("antisymmetry", anti)
        jac = True
        for a, b, c, e in product(range(n), repeat=4):
            s = sum(f[a][b][d] * f[d][c][e] + f[b][c][d] * f[d][a][e] + f[c][a][d] * f[d][b][e]
                    for d in range(n))
            if s:
                jac = False
                break
        rep.add("Jacobi identity", jac)
        alg = self.derivations[0].algebra if n else None
        bad = []
        for a, b in product(range(n), repeat=2):
            if a >= b:
                continue
            da, db = self.derivations[a], self.derivations[b]
            for letter in alg.letters():
                if letter.startswith("K_"):
                    continue  # second derivatives of K_a would leave the second-order model
                g = alg.gen(letter)
                lhs = da(db(g)) - db(da(g))
                rhs = alg.zero()
                for c in range(n):
                    if f[a][b][c]:
                        rhs = rhs + self.derivations[c](g).scale(Scalar(f[a][b][c]))
                if lhs != rhs:
                    bad.append(f"[d{a + 1},d{b + 1}] on {letter}")
        rep.add("bracket realization", not bad, ", ".join(bad))
        return rep


# ---------------------------------------------------------------- calculus

@dataclass(frozen=True)
class RealCalculus:
    """``(A, g, M, anchor)`` with ``M`` free of rank ``n``.

    ``anchor[a][b]`` is the ``E_a``-coordinate of ``anchor(d_b)``; the
    identity matrix makes the calculus free with ``E_a = anchor(d_a)``.
    """

    algebra: AlgebraSpec
    lie: LieAlgebraSpec
    anchor: tuple = None
    basis_names: tuple = None
    name: str = ""

    def __post_init__(self):
        n = self.lie.dim
        if self.anchor is None:
            object.__setattr__(self, "anchor", tuple(tuple(r) for r in identity(n)))
        if self.basis_names is None:
            object.__setattr__(self, "basis_names", tuple(f"E_{a + 1}" for a in range(n)))
        for d in self.lie.derivations:
            if d.algebra != self.algebra:
                raise RankMismatch(f"derivation on {d.algebra}, calculus on {self.algebra}")

    @property
    def rank(self):
        return len(self.basis_names)

    @property
    def derivations(self):
        return self.lie.derivations

    @property
    def is_free(self):
        return len(self.anchor) == self.lie.dim and is_identity(self.anchor)

    def require_free(self):
        if not self.is_free:
            raise NotFree("the anchor must map the derivation basis onto the module basis")

    def d(self, a):
        return self.lie.derivations[a]

    def combination(self, coeffs):
        """Derivation ``sum_a coeffs[a] d_a``."""
        return Derivation.combine(list(zip(coeffs, self.lie.derivations)))

    def anchor_vector(self, coeffs) -> Vector:
        """``anchor(sum_b coeffs[b] d_b)`` as module coordinates."""
        n = self.rank
        return vconst(self.algebra, [sum(Fraction(self.anchor[a][b]) * Fraction(coeffs[b])
                                         for b in range(len(coeffs))) for a in range(n)])

    def basis_vector(self, a) -> Vector:
        return vbasis(self.algebra, self.rank, a)

    def zero_vector(self) -> Vector:
        return vzero(self.algebra, self.rank)

    def vector(self, coords) -> Vector:
        if len(coords) != self.rank:
            raise RankMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(coords)


# ---------------------------------------------------------------- metrics

@dataclass(frozen=True)
class HermitianMetric:
    """Matrix ``h[a][b] = h(E_a, E_b)`` with registered inverse ``h^{ab}``."""

    entries: tuple
    inverse: tuple = None

    @property
    def rank(self):
        return len(self.entries)

    @property
    def algebra(self):
        return self.entries[0][0].algebra

    @staticmethod
    def make(entries, inverse=None):
        entries = tuple(tuple(r) for r in entries)
        n = len(entries)
        if any(len(r) != n for r in entries):
            raise RankMismatch("metric matrix must be square")
        if inverse is None and is_diagonal(entries):
            inverse = tuple(tuple(invert(entries[a][a]) if a == b else entries[a][b]
                                  for b in range(n)) for a in range(n))
        elif inverse is not None:
            inverse = tuple(tuple(r) for r in inverse)
        return HermitianMetric(entries, inverse)

    @staticmethod
    def diagonal(entries):
        alg = entries[0].algebra
        n = len(entries)
        return HermitianMetric.make([[entries[a] if a == b else alg.zero() for b in range(n)]
                                     for a in range(n)])

    def __call__(self, m, n):
        return metric_eval(self, m, n)

    def require_inverse(self):
        if self.inverse is None:
            raise SingularMatrix("no registered inverse for the metric")
        return self.inverse


def is_diagonal(entries):
    return all(not entries[a][b] for a in range(len(entries))
               for b in range(len(entries)) if a != b)


def metric_eval(h: HermitianMetric, m, n) -> AlgElement:
    """``h(m, n) = sum (m^a)* h_ab n^b``."""
    r = h.rank
    if len(m) != r or len(n) != r:
        raise RankMismatch(f"metric of rank {r} applied to vectors of length {len(m)}, {len(n)}")
    alg = h.algebra
    out = alg.zero()
    for a in range(r):
        if not m[a]:
            continue
        ma = m[a].star()
        for b in range(r):
            if n[b] and h.entries[a][b]:
                out = out + ma * h.entries[a][b] * n[b]
    return out


def validate_real_metric_calculus(calc: RealCalculus, h: HermitianMetric) -> Report:
    """Report on the axioms of a real metric calculus at basis level."""
    rep = Report("real metric calculus")
    alg = calc.algebra
    n = calc.rank
    rep.add("rank", h.rank == n, f"metric rank {h.rank}, module rank {n}")
    if h.rank != n:
        return rep
    rep.add("free anchor", calc.is_free)
    bad = [f"h{a + 1}{b + 1}" for a in range(n) for b in range(n)
           if h.entries[a][b].star() != h.entries[a][b]]
    rep.add("hermitian entries", not bad, ", ".join(bad))
    bad = [f"h{a + 1}{b + 1}" for a in range(n) for b in range(n)
           if h.entries[a][b].star() != h.entries[b][a]]
    rep.add("h_ab* = h_ba", not bad, ", ".join(bad))
    if h.inverse is None:
        rep.add("registered inverse", False, "no inverse registered")
    else:
        one, zero = alg.one(), alg.zero()
        ok = True
        for a, c in product(range(n), repeat=2):
            target = one if a == c else zero
            left = sum((h.inverse[a][b] * h.entries[b][c] for b in range(n)), zero)
            right = sum((h.entries[c][b] * h.inverse[b][a] for b in range(n)), zero)
            if left != target or right != target:
                ok = False
        rep.add("registered inverse", ok)
    rep.extend(calc.lie.check())
    bad = []
    for a, d in enumerate(calc.derivations):
        try:
            check_derivation_well_defined(d)
        except RelationViolation as exc:
            bad.append(f"d{a + 1}: {', '.join(exc.relations)}")
    rep.add("derivations well defined", not bad, "; ".join(bad))
    bad = [f"d{a + 1}: {', '.join(hermiticity_defects(d))}" for a, d in enumerate(calc.derivations)
           if hermiticity_defects(d)]
    rep.add("derivations hermitian", not bad, "; ".join(bad))
    return rep


# ---------------------------------------------------------------- basis change

def change_basis(calc: RealCalculus, h: HermitianMetric, A):
    """New derivation basis ``d~_i = sum_j A[i][j] d_j`` with matching module basis.

    Returns ``(calc~, h~)`` with ``h~ = A h A^T`` and ``h~^{-1} = A^{-T} h^{-1} A^{-1}``.
    Coordinates transform as ``m~ = A^{-T} m`` (see :func:`transform_vector`).
    """
    calc.require_free()
    A = [[Fraction(x) for x in r] for r in A]
    n = calc.rank
    Ainv = rat_inverse(A)
    derivs = tuple(Derivation.combine([(A[i][j], calc.d(j)) for j in range(n)],
                                      name=f"d~{i + 1}") for i in range(n))
    f = calc.lie.structure
    g = [[[sum(A[a][c] * A[b][d] * f[c][d][e] * Ainv[e][gg]
               for c in range(n) for d in range(n) for e in range(n))
           for gg in range(n)] for b in range(n)] for a in range(n)]
    lie = LieAlgebraSpec(derivs, tuple(tuple(tuple(r) for r in p) for p in g))
    new_calc = RealCalculus(calc.algebra, lie, name=calc.name + "~")
    alg = calc.algebra

    def sandwich(M, left, right):
        return tuple(tuple(sum((M[c][d].scale(Scalar(left[a][c] * right[d][b]))
                                for c in range(n) for d in range(n)
                                if left[a][c] and right[d][b]), alg.zero())
                           for b in range(n)) for a in range(n))

    At = transpose(A)
    AinvT = transpose(Ainv)
    entries = sandwich(h.entries, A, At)
    inv = sandwich(h.inverse, AinvT, Ainv) if h.inverse is not None else None
    return new_calc, HermitianMetric(entries, inv)


def transform_vector(A, m) -> Vector:
    """Coordinates of ``m`` in the basis ``E~_i = sum_j A[i][j] E_j``."""
    A = [[Fraction(x) for x in r] for r in A]
    B = transpose(rat_inverse(A))
    n = len(m)
    alg = m[0].algebra
    return tuple(sum((m[j].scale(Scalar(B[i][j])) for j in range(n) if B[i][j]), alg.zero())
                 for i in range(n))
