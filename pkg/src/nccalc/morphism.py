"""Real calculus homomorphisms, induced metrics and embeddings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .calculus import (HermitianMetric, RealCalculus, is_diagonal, metric_eval, vadd, vsub,
                       vzero)
from .errors import (AmbiguousModuleMap, DerivationOrderExceeded, DomainMismatch, GramSingular,
                     NotCompatible, NotComplement, NotHermitian, NotInBasisSpan, NotInvertible,
                     NotLieHom, NotOrthogonal, NotSurjective, NotTangential, RelationViolation,
                     SingularMatrix, UnsupportedInversion)
from .linalg import left_inverse, matmul, rank
from .qalgebra import Derivation, base_letters_of, defining_relations, invert
from .scalars import Scalar


# ---------------------------------------------------------------- algebra maps

class AlgebraMap:
    """A unital *-homomorphism given by the images of the letters.

    ``images`` must cover the unstarred base generators and every formal
    symbol of the source; starred generators map to the adjoint images.
    """

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        full = {}
        for k, v in images.items():
            if v.algebra != target:
                raise DomainMismatch(f"image of {k} lies in {v.algebra}, expected {target}")
            full[k] = v
        gens = ("U", "V") if source.is_torus else ("Z", "W")
        for g in gens:
            if g not in full:
                raise ValueError(f"missing image of {g}")
            full.setdefault(g + "*", full[g].star())
        for sym in source.formal_symbols():
            if sym not in full:
                raise ValueError(f"missing image of {sym}")
        self.images = full
        self._central_cache = {}
        if source.is_sphere:
            self._t = full["Z"] * full["Z*"]
            self._one_minus_t = target.one() - self._t
        self._base_cache = {}

    def __eq__(self, other):
        return (isinstance(other, AlgebraMap) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target))

    def of_letter(self, letter):
        return self.images[letter]

    def _central(self, c):
        if c in self._central_cache:
            return self._central_cache[c]
        tgt = self.target
        if c.is_constant():
            out = tgt.const(c.constant())
        else:
            t = self._t
            out = tgt.zero()
            for coef in reversed(c.num):
                out = out * t + tgt.const(coef) if coef else out * t
            if c.i:
                out = out * invert(t) ** c.i
            if c.j:
                out = out * invert(self._one_minus_t) ** c.j
        self._central_cache[c] = out
        return out

    def _base(self, base):
        if base not in self._base_cache:
            out = self.target.one()
            for letter in base_letters_of(self.source, base):
                out = out * self.images[letter]
            self._base_cache[base] = out
        return self._base_cache[base]

    def __call__(self, x):
        if x.algebra != self.source:
            raise DomainMismatch(f"map from {self.source} applied to {x.algebra}")
        tgt = self.target
        out = tgt.zero()
        for (base, word), c in x.terms.items():
            term = self._central(c)
            if base != (0, 0):
                term = term * self._base(base)
            for sym in word:
                term = term * self.images[sym]
            out = out + term
        return out

    def apply_raw(self, side):
        out = self.target.zero()
        for coef, letters in side:
            term = self.target.const(coef)
            for l in letters:
                term = term * self.images[l]
            out = out + term
        return out

    def compose_after(self, first):
        """``self ∘ first``."""
        if first.target != self.source:
            raise DomainMismatch(f"cannot compose {first.target} with {self.source}")
        return AlgebraMap(first.source, self.target,
                          {k: self(v) for k, v in first.images.items() if not k.endswith("*")})

    def relation_defects(self):
        bad = []
        for r in defining_relations(self.source):
            if self.apply_raw(r.lhs) != self.apply_raw(r.rhs):
                bad.append(r.name)
        for letter, img in self.images.items():
            if letter.startswith("K") and img.star() != img:
                bad.append(f"{letter} hermitian")
        return bad

    def check(self):
        bad = self.relation_defects()
        if bad:
            raise RelationViolation(f"algebra map breaks {', '.join(bad)}", bad)

    @staticmethod
    def identity(algebra):
        gens = ("U", "V") if algebra.is_torus else ("Z", "W")
        images = {g: algebra.gen(g) for g in gens}
        images.update({s: algebra.gen(s) for s in algebra.formal_symbols()})
        return AlgebraMap(algebra, algebra, images)


# ---------------------------------------------------------------- homomorphisms

def _frac_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


@dataclass(frozen=True, eq=False)
class CalculusHomomorphism:
    """``(φ, ψ, ψ̂)`` from ``source`` to ``target``.

    ``psi[a][i]`` is the coefficient of ``d_a`` in ``ψ(δ_i)``; ``ψ̂`` is
    synthesized from ``(φ, ψ)`` through the rational left inverse of the
    matrix of ``Ψ(δ_i) = anchor(ψ(δ_i))``.
    """

    source: RealCalculus
    target: RealCalculus
    phi: AlgebraMap
    psi: tuple
    Psi: tuple = field(repr=False)
    left_inv: tuple = field(repr=False)

    @property
    def k(self):
        return len(self.psi[0]) if self.psi else 0

    def psi_coeffs(self, i):
        return [self.psi[a][i] for a in range(len(self.psi))]

    def psi_of(self, i) -> Derivation:
        return self.source.combination(self.psi_coeffs(i))

    def psi_vector(self, i):
        """``Ψ(δ_i)`` as source module coordinates."""
        return self.source.anchor_vector(self.psi_coeffs(i))

    def tangent_coords(self, m):
        """``a`` with ``m = sum_i Ψ(δ_i) a^i``; raises NotTangential otherwise."""
        alg = self.source.algebra
        L = self.left_inv
        a = [sum((m[b].scale(Scalar(L[i][b])) for b in range(len(m)) if L[i][b]), alg.zero())
             for i in range(self.k)]
        back = vzero(alg, len(m))
        for i in range(self.k):
            back = vadd(back, tuple(alg.const(Scalar(x)) * a[i] for x in self.Psi[i]))
        if back != tuple(m):
            raise NotTangential("vector is not in the span of the Ψ(δ_i)")
        return a

    def psi_hat(self, m):
        """``ψ̂(Ψ(δ_i) a^i) = φ'(δ_i) φ(a^i)``."""
        a = self.tangent_coords(m)
        tgt = self.target
        out = tgt.zero_vector()
        for i, ai in enumerate(a):
            if ai:
                out = vadd(out, tuple(v * self.phi(ai) for v in tgt.anchor_vector(
                    [1 if j == i else 0 for j in range(tgt.lie.dim)])))
        return out

    def apply_vector(self, m):
        """Coordinatewise ``φ`` (used for pushing forward metric values)."""
        return tuple(self.phi(x) for x in m)


def _check_lie_hom(source, target, P):
    n, k = len(P), len(P[0]) if P else 0
    fp = target.lie.structure
    for i, j in product(range(k), repeat=2):
        lhs = [sum(fp[i][j][l] * P[a][l] for l in range(k)) for a in range(n)]
        rhs = source.lie.bracket_coeffs([P[a][i] for a in range(n)], [P[a][j] for a in range(n)])
        if lhs != rhs:
            raise NotLieHom(f"ψ([δ{i + 1},δ{j + 1}]) != [ψ(δ{i + 1}),ψ(δ{j + 1})]")


def compatibility_defects(source, target, phi, P):
    """Pairs ``(δ_i, g)`` with ``δ_i(φ(g)) != φ(ψ(δ_i)(g))``."""
    bad = []
    n = len(P)
    for i, delta in enumerate(target.derivations):
        psi_d = source.combination([P[a][i] for a in range(n)])
        for letter in source.algebra.letters():
            g = source.algebra.gen(letter)
            try:
                lhs = delta(phi(g))
                rhs = phi(psi_d(g))
            except DerivationOrderExceeded:
                continue
            if lhs != rhs:
                bad.append(f"δ{i + 1} on {letter}")
    return bad


def construct_hom(source: RealCalculus, target: RealCalculus, phi: AlgebraMap, psi):
    """Validate ``(φ, ψ)`` and synthesize ``ψ̂``."""
    if phi.source != source.algebra or phi.target != target.algebra:
        raise DomainMismatch("algebra map does not match the calculi")
    P = _frac_matrix(psi)
    if len(P) != source.lie.dim or any(len(r) != target.lie.dim for r in P):
        raise DomainMismatch(f"ψ must be a {source.lie.dim}x{target.lie.dim} matrix")
    phi.check()
    _check_lie_hom(source, target, P)
    bad = compatibility_defects(source, target, phi, P)
    if bad:
        raise NotCompatible(f"compatibility fails: {', '.join(bad)}")
    k = target.lie.dim
    cols = [[sum(Fraction(source.anchor[a][b]) * P[b][i] for b in range(len(P)))
             for a in range(source.rank)] for i in range(k)]
    M = [[cols[i][a] for i in range(k)] for a in range(source.rank)]
    if rank(M) < k:
        raise AmbiguousModuleMap("Ψ(δ_i) are linearly dependent; ψ̂ is not determined")
    L = left_inverse(M)
    return CalculusHomomorphism(source, target, phi, tuple(tuple(r) for r in P),
                                tuple(tuple(c) for c in cols), tuple(tuple(r) for r in L))


def identity_hom(calc):
    n = calc.lie.dim
    return construct_hom(calc, calc, AlgebraMap.identity(calc.algebra),
                         [[1 if a == b else 0 for b in range(n)] for a in range(n)])


def compose(f: CalculusHomomorphism, g: CalculusHomomorphism):
    """``g ∘ f``: algebra maps compose forward, ψ-matrices backward."""
    if f.target != g.source:
        raise DomainMismatch("codomain of the first hom is not the domain of the second")
    phi = g.phi.compose_after(f.phi)
    P = matmul([list(r) for r in f.psi], [list(r) for r in g.psi])
    return construct_hom(f.source, g.target, phi, P)


def _solve_scalar(rows, rhs, nvars):
    """Exact unique solution of a (possibly overdetermined) system over Scalars."""
    from .linalg import _rref
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        raise NotInBasisSpan("no equations")
    red, piv = _rref(aug)
    if nvars in piv:
        raise NotInBasisSpan("inconsistent system")
    if piv != list(range(nvars)):
        raise NotInBasisSpan("derivation basis is not independent on the generators")
    return [red[i][nvars] for i in range(nvars)]


def _flatten(elements):
    """Coordinates of several elements over one common denominator."""
    I = max((c.i for x in elements for c in x.terms.values()), default=0)
    J = max((c.j for x in elements for c in x.terms.values()), default=0)
    out = []
    for x in elements:
        coords = {}
        for key, c in x.terms.items():
            for p, s in enumerate(c._lift(I, J)):
                if s:
                    coords[(key, p)] = s
        out.append(coords)
    return out


def iso_psi_from_phi(source, target, phi, phi_inv):
    """``ψ(δ) = φ^{-1} ∘ δ ∘ φ`` expanded in the source derivation basis."""
    for letter in target.algebra.letters():
        if letter.endswith("*"):
            continue
        g = target.algebra.gen(letter)
        if phi(phi_inv(g)) != g:
            raise NotInvertible(f"φ ∘ φ^-1 differs from the identity on {letter}")
    for letter in source.algebra.letters():
        if letter.endswith("*"):
            continue
        g = source.algebra.gen(letter)
        if phi_inv(phi(g)) != g:
            raise NotInvertible(f"φ^-1 ∘ φ differs from the identity on {letter}")
    n = source.lie.dim
    letters = [l for l in source.algebra.letters() if not l.startswith("K_")]
    cols = []
    for delta in target.derivations:
        rows, rhs = [], []
        for letter in letters:
            g = source.algebra.gen(letter)
            y = phi_inv(delta(phi(g)))
            ds = [source.d(a)(g) for a in range(n)]
            flat = _flatten(ds + [y])
            keys = set().union(*flat)
            for key in sorted(keys, key=repr):
                rows.append([flat[a].get(key, Scalar(0)) for a in range(n)])
                rhs.append(flat[n].get(key, Scalar(0)))
        x = _solve_scalar(rows, rhs, n)
        vals = [s.rational_value() for s in x]
        if any(v is None for v in vals):
            raise NotInBasisSpan("ψ(δ) needs non-real coefficients")
        cols.append(vals)
    return [[cols[i][a] for i in range(len(cols))] for a in range(n)]


# ---------------------------------------------------------------- metrics

def induced_metric(f: CalculusHomomorphism, h: HermitianMetric, inverse=None):
    """``h'_ij = φ(h(Ψ(δ_i), Ψ(δ_j)))``."""
    k = f.k
    entries = [[f.phi(metric_eval(h, f.psi_vector(i), f.psi_vector(j))) for j in range(k)]
               for i in range(k)]
    bad = [(i, j) for i in range(k) for j in range(k) if entries[i][j].star() != entries[j][i]
           or entries[i][j].star() != entries[i][j]]
    if bad:
        raise NotHermitian(f"induced metric entries {bad} are not hermitian")
    if inverse is None and not is_diagonal(entries):
        inverse = algebra_matrix_inverse(entries)
    return HermitianMetric.make(entries, inverse)


def algebra_matrix_inverse(M):
    """Two-sided inverse over a noncommutative algebra by Gauss-Jordan with
    invertible pivots; raises SingularMatrix when no invertible pivot exists."""
    n = len(M)
    alg = M[0][0].algebra
    rows = [list(M[i]) + [alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            if rows[r][c]:
                try:
                    inv = invert(rows[r][c])
                except UnsupportedInversion:
                    continue
                piv = (r, inv)
                break
        if piv is None:
            raise SingularMatrix(f"no invertible pivot in column {c + 1}")
        r, inv = piv
        rows[c], rows[r] = rows[r], rows[c]
        rows[c] = [inv * x for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    out = [r[n:] for r in rows]
    check = [[sum((M[i][k] * out[k][j] for k in range(n)), alg.zero()) for j in range(n)]
             for i in range(n)]
    if any(check[i][j] != (alg.one() if i == j else alg.zero())
           for i in range(n) for j in range(n)):
        raise SingularMatrix("left inverse is not a right inverse")
    return out


# ---------------------------------------------------------------- embeddings

@dataclass(frozen=True, eq=False)
class Embedding:
    """A homomorphism with surjective φ and a complement ``M = M_Ψ ⊕ M~``."""

    hom: CalculusHomomorphism
    complement: tuple
    h: HermitianMetric = None
    h_target: HermitianMetric = None
    isometric: bool = True
    combined: tuple = None
    combined_inverse: tuple = None
    gram: tuple = None
    gram_inverse: tuple = None
    preimages: dict = None

    @property
    def source(self):
        return self.hom.source

    @property
    def target(self):
        return self.hom.target

    @property
    def k(self):
        return self.hom.k

    def psi_vector(self, i):
        return self.hom.psi_vector(i)


def surjectivity_certificate(phi, preimages=None):
    """Preimage for every target generator, given or found among scaled letters."""
    tgt = phi.target
    gens = ("U", "V") if tgt.is_torus else ("Z", "W")
    wanted = list(gens) + [s for s in tgt.formal_symbols()]
    found = dict(preimages or {})
    for letter in phi.source.letters():
        img = phi.of_letter(letter)
        if len(img.terms) != 1:
            continue
        (key, c), = img.terms.items()
        if not c.is_constant():
            continue
        for g in wanted:
            if g in found:
                continue
            (gkey, _), = tgt.gen(g).terms.items()
            if key == gkey:
                found[g] = phi.source.gen(letter).scale(c.constant().inverse())
    missing = [g for g in wanted if g not in found or phi(found[g]) != tgt.gen(g)]
    if missing:
        raise NotSurjective(f"no preimage certified for {', '.join(missing)}")
    return found


def make_embedding(hom, complement, h=None, h_target=None, isometric=True,
                   preimages=None, combined_inverse=None):
    pre = surjectivity_certificate(hom.phi, preimages)
    src = hom.source
    n = src.rank
    complement = tuple(tuple(v) for v in complement)
    cols = [hom.psi_vector(i) for i in range(hom.k)] + list(complement)
    if len(cols) != n:
        raise NotComplement(f"{len(cols)} basis vectors for a module of rank {n}")
    B = [[cols[j][a] for j in range(n)] for a in range(n)]
    if combined_inverse is None:
        try:
            combined_inverse = algebra_matrix_inverse(B)
        except SingularMatrix as exc:
            raise NotComplement(f"Ψ-basis plus complement is not a basis: {exc}") from exc
    else:
        alg = src.algebra
        for i, j in product(range(n), repeat=2):
            want = alg.one() if i == j else alg.zero()
            if (sum((combined_inverse[i][k] * B[k][j] for k in range(n)), alg.zero()) != want or
                    sum((B[i][k] * combined_inverse[k][j] for k in range(n)), alg.zero()) != want):
                raise NotComplement("registered combined inverse is wrong")
    gram = gram_inv = None
    if isometric:
        if h is None:
            raise NotOrthogonal("an isometric embedding needs the ambient metric")
        for i in range(hom.k):
            for kk, xi in enumerate(complement):
                if metric_eval(h, hom.psi_vector(i), xi):
                    raise NotOrthogonal(f"h(Ψ(δ{i + 1}), ξ{kk + 1}) != 0")
        gram = [[metric_eval(h, hom.psi_vector(i), hom.psi_vector(j)) for j in range(hom.k)]
                for i in range(hom.k)]
        try:
            gram_inv = algebra_matrix_inverse(gram)
        except SingularMatrix as exc:
            raise GramSingular(str(exc)) from exc
        if h_target is None:
            h_target = induced_metric(hom, h)
    return Embedding(hom, complement, h, h_target, isometric,
                     tuple(tuple(r) for r in B), tuple(tuple(r) for r in combined_inverse),
                     None if gram is None else tuple(tuple(r) for r in gram),
                     None if gram_inv is None else tuple(tuple(r) for r in gram_inv), pre)


def _combo(vectors, coeffs, alg, n):
    out = vzero(alg, n)
    for v, c in zip(vectors, coeffs):
        if c:
            out = vadd(out, tuple(x * c for x in v))
    return out


def project_via_gram(e: Embedding, m):
    hom = e.hom
    alg = e.source.algebra
    n = e.source.rank
    b = [metric_eval(e.h, hom.psi_vector(i), m) for i in range(e.k)]
    c = [sum((e.gram_inverse[i][j] * b[j] for j in range(e.k)), alg.zero()) for i in range(e.k)]
    return _combo([hom.psi_vector(i) for i in range(e.k)], c, alg, n)


def project_via_basis(e: Embedding, m):
    alg = e.source.algebra
    n = e.source.rank
    c = [sum((e.combined_inverse[i][j] * m[j] for j in range(n)), alg.zero()) for i in range(n)]
    cols = [[e.combined[a][j] for a in range(n)] for j in range(n)]
    return _combo(cols[:e.k], c[:e.k], alg, n)


def project(e: Embedding, m):
    """``(P m, Π m)`` with ``P m + Π m = m``."""
    m = tuple(m)
    tang = project_via_gram(e, m) if e.isometric else project_via_basis(e, m)
    return tang, vsub(m, tang)


def is_extension(e: Embedding, m, m_target):
    _, normal = project(e, m)
    if any(normal):
        raise NotTangential("vector has a normal component")
    return e.hom.psi_hat(m) == tuple(m_target)
