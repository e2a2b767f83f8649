"""Canonical-form arithmetic for the noncommutative torus and 3-sphere.

Every element is a finite map ``(base, word) -> CentralFn``.

* Torus: ``base = (m, n)`` stands for ``U^m V^n``; normal ordering uses
  ``V^n U^m = q^(mn) U^m V^n``.
* Sphere: ``base = (a, c)`` stands for ``Z^a W^c`` with the sign convention
  ``Z^(-a) = (Z*)^a`` (likewise for W).  Pushing the W-block past the Z-block
  costs ``W^c Z^a = q^(ac) Z^a W^c``; ``Z Z* = Z* Z = t`` and
  ``W W* = W* W = 1 - t`` are absorbed into the central coefficient.
* Formal conformal-factor extension: ``word`` is a tuple over
  ``K, Kinv, K_a, K_ab``.  The symbols commute with the base algebra but not
  with each other; words only reduce by cancelling ``K Kinv`` pairs.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import (DerivationOrderExceeded, MixedAlgebras, RelationViolation,
                     UnsupportedInversion)
from .scalars import CONE, CZERO, ONE, CentralFn, Scalar, as_scalar

TORUS = "torus"
SPHERE3 = "sphere3"
SPHERE3LOC = "sphere3loc"
_BASES = (TORUS, SPHERE3, SPHERE3LOC)

TORUS_LETTERS = ("U", "U*", "V", "V*")
SPHERE_LETTERS = ("Z", "Z*", "W", "W*")
_STAR_LETTER = {"U": "U*", "U*": "U", "V": "V*", "V*": "V",
                "Z": "Z*", "Z*": "Z", "W": "W*", "W*": "W"}


@dataclass(frozen=True)
class AlgebraSpec:
    """Which algebra an element lives in.

    ``formal_indices > 0`` adjoins the formal conformal factor ``K`` with
    first and second derivative symbols indexed by ``1..formal_indices``.
    ``q_one`` is the commutative specialization ``q = 1``.
    """

    base: str
    formal_indices: int = 0
    q_one: bool = False

    def __post_init__(self):
        if self.base not in _BASES:
            raise ValueError(f"unknown algebra {self.base!r}")
        if self.formal_indices < 0 or self.formal_indices > 9:
            raise ValueError("formal_indices must lie in 0..9")

    @property
    def is_torus(self):
        return self.base == TORUS

    @property
    def is_sphere(self):
        return self.base != TORUS

    @property
    def localized(self):
        return self.base == SPHERE3LOC

    @property
    def formal(self):
        return self.formal_indices > 0

    def specialized(self):
        return replace(self, q_one=True)

    def __str__(self):
        name = {TORUS: "T2", SPHERE3: "S3", SPHERE3LOC: "S3loc"}[self.base]
        if self.formal:
            name += f"[K;{self.formal_indices}]"
        if self.q_one:
            name += "(q=1)"
        return name

    # -- symbols
    def base_letters(self):
        return TORUS_LETTERS if self.is_torus else SPHERE_LETTERS

    def formal_symbols(self):
        if not self.formal:
            return ()
        n = self.formal_indices
        syms = ["K", "Kinv"] + [f"K_{a}" for a in range(1, n + 1)]
        syms += [f"K_{a}{b}" for a in range(1, n + 1) for b in range(a, n + 1)]
        return tuple(syms)

    def letters(self):
        return self.base_letters() + self.formal_symbols()

    # -- element constructors
    def zero(self):
        return AlgElement(self, {})

    def one(self):
        return AlgElement(self, {((0, 0), ()): CONE})

    def const(self, c):
        c = c if isinstance(c, CentralFn) else CentralFn(as_scalar(c))
        if not c:
            return self.zero()
        return AlgElement(self, {((0, 0), ()): c}, check=True)

    def q_power(self, half_exponent):
        return self.const(qpow(self, half_exponent))

    def monomial(self, base, word=(), coef=CONE):
        if not coef:
            return self.zero()
        return AlgElement(self, {(tuple(base), tuple(word)): coef}, check=True)

    def t(self):
        if self.is_torus:
            raise ValueError("t = |Z|^2 only exists on the 3-sphere")
        return AlgElement(self, {((0, 0), ()): CentralFn.t()})

    def gen(self, name):
        """Element for a generator or letter name (``U``, ``Z*``, ``t``, ``K_2``...)."""
        if name == "t":
            return self.t()
        if self.is_torus:
            table = {"U": (1, 0), "U*": (-1, 0), "V": (0, 1), "V*": (0, -1)}
        else:
            table = {"Z": (1, 0), "Z*": (-1, 0), "W": (0, 1), "W*": (0, -1)}
        if name in table:
            return AlgElement(self, {(table[name], ()): CONE})
        if name in self.formal_symbols():
            return AlgElement(self, {((0, 0), (canonical_symbol(name),)): CONE})
        raise ValueError(f"{name!r} is not a generator of {self}")


def canonical_symbol(name):
    """Second-derivative symbols are symmetric: ``K_31`` -> ``K_13``."""
    if name.startswith("K_") and len(name) == 4:
        a, b = sorted(name[2:])
        return f"K_{a}{b}"
    return name


def qpow(algebra, half_exponent):
    if algebra.q_one or half_exponent == 0:
        return CONE
    return _qpow_cached(half_exponent)


@lru_cache(maxsize=None)
def _qpow_cached(k):
    return CentralFn(Scalar.q_half_power(k))


@lru_cache(maxsize=None)
def _t_factor(kt, kw):
    c = CONE
    for _ in range(kt):
        c = c * CentralFn.t()
    for _ in range(kw):
        c = c * CentralFn.one_minus_t()
    return c


def _combine_signed(a1, a2):
    """Z^a1 Z^a2 in the signed convention: returns (power of central, exponent)."""
    if a1 * a2 < 0:
        return min(abs(a1), abs(a2)), a1 + a2
    return 0, a1 + a2


@lru_cache(maxsize=200_000)
def _base_mul(base_kind, q_one, b1, b2):
    if base_kind == TORUS:
        (m1, n1), (m2, n2) = b1, b2
        k = 2 * n1 * m2
        f = CONE if (q_one or not k) else _qpow_cached(k)
        return f, (m1 + m2, n1 + n2)
    (a1, c1), (a2, c2) = b1, b2
    k = 2 * a2 * c1
    kt, a = _combine_signed(a1, a2)
    kw, c = _combine_signed(c1, c2)
    f = CONE if (q_one or not k) else _qpow_cached(k)
    if kt or kw:
        f = f * _t_factor(kt, kw)
    return f, (a, c)


_INVERSE_SYMBOL = {"K": "Kinv", "Kinv": "K"}


def reduce_word(word):
    out = []
    for sym in word:
        if out and _INVERSE_SYMBOL.get(sym) == out[-1]:
            out.pop()
        else:
            out.append(sym)
    return tuple(out)


def _base_star(base_kind, q_one, b):
    m, n = b
    k = 2 * m * n
    f = CONE if (q_one or not k) else _qpow_cached(k)
    return f, (-m, -n)


class AlgElement:
    """Immutable normal-form element of an :class:`AlgebraSpec`."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra, terms, check=False):
        self.algebra = algebra
        self.terms = terms
        self._hash = None
        if check:
            _validate(algebra, terms)

    # -- structure
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar_multiple_of_one(self):
        return not self.terms or (len(self.terms) == 1 and ((0, 0), ()) in self.terms)

    def central_part(self):
        """The CentralFn ``c`` if the element is ``c * 1``, else None."""
        if not self.terms:
            return CZERO
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            if key == ((0, 0), ()):
                return c
        return None

    def scalar_value(self):
        """The Scalar ``s`` if the element is ``s * 1``, else None."""
        c = self.central_part()
        if c is None or not c.is_constant():
            return None
        return c.constant()

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1]))

    # -- arithmetic
    def _other(self, other):
        if isinstance(other, AlgElement):
            if other.algebra != self.algebra:
                raise MixedAlgebras(f"{self.algebra} vs {other.algebra}")
            return other
        if isinstance(other, (int, Fraction, Scalar, CentralFn)):
            return self.algebra.const(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return AlgElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        """Multiply by a central coefficient (Scalar/CentralFn/number)."""
        c = c if isinstance(c, CentralFn) else CentralFn(as_scalar(c))
        if not c:
            return self.algebra.zero()
        if c.is_one():
            return self
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return AlgElement(self.algebra, out, check=not c.is_polynomial())

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, CentralFn)):
            return self.scale(other)
        other = self._other(other)
        if other is None:
            return NotImplemented
        alg = self.algebra
        if not self.terms or not other.terms:
            return alg.zero()
        kind, q_one = alg.base, alg.q_one
        out = {}
        for (b1, w1), c1 in self.terms.items():
            for (b2, w2), c2 in other.terms.items():
                f, b = _base_mul(kind, q_one, b1, b2)
                w = reduce_word(w1 + w2) if (w1 and w2) else (w1 or w2)
                c = c1 * c2
                if not f.is_one():
                    c = c * f
                key = (b, w)
                v = out.get(key)
                v = c if v is None else v + c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return AlgElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar, CentralFn)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else invert(self)
        out = self.algebra.one()
        for _ in range(abs(n)):
            out = out * base
        return out

    def star(self):
        alg = self.algebra
        out = {}
        for (b, w), c in self.terms.items():
            f, bs = _base_star(alg.base, alg.q_one, b)
            key = (bs, tuple(reversed(w)))
            v = c.conj()
            if not f.is_one():
                v = v * f
            out[key] = out[key] + v if key in out else v
        return AlgElement(alg, {k: v for k, v in out.items() if v})

    def map_coefficients(self, f, algebra=None):
        out = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                out[k] = v
        return AlgElement(algebra or self.algebra, out)

    # -- identity
    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self == self.algebra.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"AlgElement[{self.algebra}]({self.render()})"

    def __str__(self):
        return self.render()

    def render(self):
        from .expr import render_element
        return render_element(self)


def _validate(algebra, terms):
    for (b, w), c in terms.items():
        if algebra.is_torus and not c.is_constant():
            raise ValueError("torus coefficients must be free of t")
        if algebra.base == SPHERE3 and not c.is_polynomial():
            raise UnsupportedInversion("S3 is not localized: coefficients must be polynomial in t")
        if w and not algebra.formal:
            raise ValueError(f"formal symbols are not available in {algebra}")
        if w:
            allowed = algebra.formal_symbols()
            if any(s not in allowed for s in w):
                raise ValueError(f"unknown formal symbol in {w}")


def specialize_element(x, value=1):
    """Image of ``x`` under ``q -> 1``."""
    alg = x.algebra.specialized()
    return x.map_coefficients(lambda c: c.specialize_q(value), alg)


# ---------------------------------------------------------------- inversion

def invert(x):
    """Two-sided inverse of an invertible monomial-type element.

    Supported: ``c * t^i (1-t)^j`` (localized sphere), torus monomials, and
    formal words made of ``K``/``Kinv``, each times a nonzero scalar.
    Anything else raises :class:`UnsupportedInversion`.
    """
    alg = x.algebra
    if len(x.terms) != 1:
        raise UnsupportedInversion(f"cannot invert {x.render()}")
    (base, word), c = next(iter(x.terms.items()))
    if alg.is_sphere and base != (0, 0):
        raise UnsupportedInversion(f"{x.render()} is not invertible in {alg}")
    if any(s not in ("K", "Kinv") for s in word):
        raise UnsupportedInversion(f"derivative symbols are not invertible: {x.render()}")
    cinv = c.inverse()
    if cinv is None:
        raise UnsupportedInversion(f"coefficient {c.render()} is not a monomial in t, 1-t")
    if alg.base == SPHERE3 and not cinv.is_polynomial():
        raise UnsupportedInversion(f"{x.render()} needs the localized 3-sphere")
    inv_word = tuple(_INVERSE_SYMBOL[s] for s in reversed(word))
    if alg.is_torus:
        f, binv = _base_star(alg.base, alg.q_one, base)
        cinv = cinv * f
    else:
        binv = base
    y = AlgElement(alg, {(binv, inv_word): cinv})
    one = alg.one()
    if x * y != one or y * x != one:
        raise UnsupportedInversion(f"inverse check failed for {x.render()}")
    return y


# ---------------------------------------------------------------- letters

def letter_element(algebra, letter):
    return algebra.gen(letter)


def base_letters_of(algebra, base):
    """Canonical factorization of a base monomial into letters."""
    m, n = base
    if algebra.is_torus:
        first, second = ("U", "U*"), ("V", "V*")
    else:
        first, second = ("Z", "Z*"), ("W", "W*")
    out = [first[0] if m > 0 else first[1]] * abs(m)
    out += [second[0] if n > 0 else second[1]] * abs(n)
    return out


def word_element(algebra, letters):
    """Normalized product of a raw letter sequence (with the identity for [])."""
    out = algebra.one()
    for l in letters:
        out = out * algebra.gen(l)
    return out


# ---------------------------------------------------------------- relations

@dataclass(frozen=True)
class Relation:
    """A defining relation ``lhs = rhs``; each side is a list of
    ``(Scalar, letters)`` raw terms (before any normalization)."""

    name: str
    lhs: tuple
    rhs: tuple


def defining_relations(algebra):
    q = ONE if algebra.q_one else Scalar.q_half_power(2)
    qb = q.conj()
    rels = []
    if algebra.is_torus:
        rels.append(Relation("VU = qUV", ((ONE, ("V", "U")),), ((q, ("U", "V")),)))
        for g in ("U", "V"):
            gs = g + "*"
            rels.append(Relation(f"{g}{gs} = 1", ((ONE, (g, gs)),), ((ONE, ()),)))
            rels.append(Relation(f"{gs}{g} = 1", ((ONE, (gs, g)),), ((ONE, ()),)))
    else:
        rels += [
            Relation("WZ = qZW", ((ONE, ("W", "Z")),), ((q, ("Z", "W")),)),
            Relation("W*Z = qbar ZW*", ((ONE, ("W*", "Z")),), ((qb, ("Z", "W*")),)),
            Relation("WZ* = qbar Z*W", ((ONE, ("W", "Z*")),), ((qb, ("Z*", "W")),)),
            Relation("W*Z* = qZ*W*", ((ONE, ("W*", "Z*")),), ((q, ("Z*", "W*")),)),
            Relation("Z*Z = ZZ*", ((ONE, ("Z*", "Z")),), ((ONE, ("Z", "Z*")),)),
            Relation("W*W = WW*", ((ONE, ("W*", "W")),), ((ONE, ("W", "W*")),)),
            Relation("WW* = 1 - ZZ*", ((ONE, ("W", "W*")),),
                     ((ONE, ()), (-ONE, ("Z", "Z*")))),
        ]
    if algebra.formal:
        rels.append(Relation("K Kinv = 1", ((ONE, ("K", "Kinv")),), ((ONE, ()),)))
        rels.append(Relation("Kinv K = 1", ((ONE, ("Kinv", "K")),), ((ONE, ()),)))
    return rels


def eval_side(algebra, side):
    out = algebra.zero()
    for coef, letters in side:
        out = out + word_element(algebra, letters).scale(coef)
    return out


def check_relations(algebra):
    """Residuals ``normalize(L - R)`` of every defining relation."""
    return {r.name: eval_side(algebra, r.lhs) - eval_side(algebra, r.rhs)
            for r in defining_relations(algebra)}


# ---------------------------------------------------------------- derivations

class Derivation:
    """A derivation given by its action on letters, extended by Leibniz.

    ``images`` maps base letters to elements; missing starred letters are
    completed hermitianly (sphere: ``d(Z*) = d(Z)*``) or by the inverse rule
    (torus: ``d(U*) = -U* d(U) U*``).  ``formal`` is the coefficient vector
    of the action on ``K``: ``d(K) = sum_a formal[a] K_a`` and
    ``d(K_a) = sum_b formal[b] K_ab``.  ``q_action`` lets ``d`` act on the
    coefficient field as ``q_action * q d/dq``; it exists to model broken
    inputs and is zero for every genuine derivation.
    """

    def __init__(self, algebra, images, formal=None, q_action=0, name=None):
        self.algebra = algebra
        self.name = name
        full = {}
        for letter, img in images.items():
            if img.algebra != algebra:
                raise MixedAlgebras(f"image of {letter} lives in {img.algebra}")
            full[letter] = img
        for g in ("U", "V") if algebra.is_torus else ():
            gs = g + "*"
            if g in full and gs not in full:
                inv = algebra.gen(gs)
                full[gs] = -(inv * full[g] * inv)
        for g in ("Z", "W") if algebra.is_sphere else ():
            gs = g + "*"
            if g in full and gs not in full:
                full[gs] = full[g].star()
        for letter in algebra.base_letters():
            full.setdefault(letter, algebra.zero())
        self.images = full
        n = algebra.formal_indices
        vec = tuple(Fraction(v) for v in (formal or ()))
        if len(vec) < n:
            vec = vec + (Fraction(0),) * (n - len(vec))
        self.formal = vec[:n] if n else ()
        self.q_action = Fraction(q_action)
        self._dt = None
        if algebra.is_sphere:
            z, zs = algebra.gen("Z"), algebra.gen("Z*")
            dt = full["Z"] * zs + z * full["Z*"]
            c = dt.central_part()
            if c is None:
                raise ValueError("derivations must map |Z|^2 to a central element")
            self._dt = c
        self._base_cache = {}
        self._sym_cache = {}

    # -- identity
    def _key(self):
        letters = self.algebra.base_letters()
        return (self.algebra, tuple(self.images[k] for k in letters),
                self.formal, self.q_action)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Derivation({self.name or '?'} on {self.algebra})"

    # -- linear structure
    @staticmethod
    def combine(pairs, name=None):
        """``sum_k c_k d_k`` for rational ``c_k``."""
        pairs = [(Fraction(c), d) for c, d in pairs]
        if not pairs:
            raise ValueError("empty combination")
        alg = pairs[0][1].algebra
        images = {}
        for letter in alg.base_letters():
            acc = alg.zero()
            for c, d in pairs:
                if c:
                    acc = acc + d.images[letter].scale(Scalar(c))
            images[letter] = acc
        n = alg.formal_indices
        formal = tuple(sum((c * d.formal[a] for c, d in pairs), Fraction(0)) for a in range(n))
        q_action = sum((c * d.q_action for c, d in pairs), Fraction(0))
        return Derivation(alg, images, formal, q_action, name=name)

    def specialized(self, value=1):
        alg = self.algebra.specialized()
        images = {k: specialize_element(v, value) for k, v in self.images.items()}
        return Derivation(alg, images, self.formal, self.q_action, name=self.name)

    # -- action
    def of_letter(self, letter):
        if letter in self.images:
            return self.images[letter]
        return self._symbol(letter)

    def _formal_sum(self, names):
        alg = self.algebra
        acc = alg.zero()
        for v, sym in zip(self.formal, names):
            if v:
                acc = acc + alg.gen(sym).scale(Scalar(v))
        return acc

    def _symbol(self, sym):
        if sym in self._sym_cache:
            return self._sym_cache[sym]
        alg = self.algebra
        n = alg.formal_indices
        if sym == "K":
            out = self._formal_sum([f"K_{a}" for a in range(1, n + 1)])
        elif sym == "Kinv":
            kinv = alg.gen("Kinv")
            out = -(kinv * self._symbol("K") * kinv)
        elif len(sym) == 3:
            a = sym[2]
            out = self._formal_sum([canonical_symbol(f"K_{a}{b}") for b in range(1, n + 1)])
        else:
            if any(self.formal):
                raise DerivationOrderExceeded(f"third derivative of K requested via {sym}")
            out = alg.zero()
        self._sym_cache[sym] = out
        return out

    def _of_base(self, base):
        if base in self._base_cache:
            return self._base_cache[base]
        alg = self.algebra
        letters = base_letters_of(alg, base)
        elems = [alg.gen(l) for l in letters]
        out = alg.zero()
        prefix = alg.one()
        for k, l in enumerate(letters):
            dl = self.images[l]
            if dl:
                suffix = alg.one()
                for e in elems[k + 1:]:
                    suffix = suffix * e
                out = out + prefix * dl * suffix
            prefix = prefix * elems[k]
        self._base_cache[base] = out
        return out

    def _of_word(self, word):
        alg = self.algebra
        out = alg.zero()
        for k, sym in enumerate(word):
            ds = self._symbol(sym)
            if ds:
                pre = AlgElement(alg, {((0, 0), word[:k]): CONE}) if k else alg.one()
                post = AlgElement(alg, {((0, 0), word[k + 1:]): CONE})
                out = out + pre * ds * post
        return out

    def _of_coefficient(self, c):
        dc = CZERO
        if self._dt is not None and not c.is_constant():
            dc = c.derivative() * self._dt
        if self.q_action:
            dc = dc + c.map_scalars(lambda s: s.q_euler() * Scalar(self.q_action))
        return dc

    def __call__(self, x):
        if x.algebra != self.algebra:
            raise MixedAlgebras(f"derivation on {self.algebra} applied to {x.algebra}")
        alg = self.algebra
        out = alg.zero()
        for (base, word), c in x.terms.items():
            dc = self._of_coefficient(c)
            if dc:
                out = out + AlgElement(alg, {(base, word): dc})
            if base != (0, 0):
                db = self._of_base(base)
                if db:
                    w = AlgElement(alg, {((0, 0), word): CONE})
                    out = out + (db * w).scale(c)
            if word:
                dw = self._of_word(word)
                if dw:
                    b = AlgElement(alg, {(base, ()): CONE})
                    out = out + (b * dw).scale(c)
        return out

    def apply_raw(self, side):
        """Leibniz on an unnormalized side ``[(coef, letters), ...]``."""
        alg = self.algebra
        out = alg.zero()
        for coef, letters in side:
            if self.q_action:
                dc = coef.q_euler() * Scalar(self.q_action)
                if dc:
                    out = out + word_element(alg, letters).scale(dc)
            for k, l in enumerate(letters):
                dl = self.of_letter(l)
                if dl:
                    term = word_element(alg, letters[:k]) * dl * word_element(alg, letters[k + 1:])
                    out = out + term.scale(coef)
        return out


def apply_derivation(d, x):
    return d(x)


def derivation_residuals(d):
    """``normalize(d(L) - d(R))`` for every defining relation, by name."""
    return {r.name: d.apply_raw(r.lhs) - d.apply_raw(r.rhs)
            for r in defining_relations(d.algebra)}


def check_derivation_well_defined(d):
    """Return the (all-zero) residuals or raise :class:`RelationViolation`."""
    res = derivation_residuals(d)
    bad = [name for name, r in res.items() if r]
    if bad:
        raise RelationViolation(f"derivation breaks relations: {', '.join(bad)}", bad)
    return res


def hermiticity_defects(d):
    """Letters ``g`` with ``d(g*) != d(g)*``."""
    bad = []
    alg = d.algebra
    for g in alg.base_letters():
        if d.of_letter(_STAR_LETTER[g]) != d.of_letter(g).star():
            bad.append(g)
    for sym in alg.formal_symbols():
        try:
            if d.of_letter(sym) != d.of_letter(sym).star():
                bad.append(sym)
        except DerivationOrderExceeded:
            continue
    return bad


def commutator_on(d1, d2, x):
    return d1(d2(x)) - d2(d1(x))
