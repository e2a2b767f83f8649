"""Exact coefficients.

``Scalar`` is an element of the field of fractions of Laurent polynomials in
the formal unit ``s = q^(1/2)`` with Gaussian-rational coefficients.
Conjugation sends ``s -> 1/s`` and ``i -> -i``, which encodes ``|q| = 1``.

``CentralFn`` is a rational function of the central variable ``t = |Z|^2``
whose denominator is restricted to ``t^i (1 - t)^j``.  It is the coefficient
ring of every algebra element (torus elements only use constants).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import DivisionByZero, UnsupportedSpecialization


_MPQ = type(mpq(0))


def _gr(re, im):
    g = object.__new__(GaussRat)
    g.re = re
    g.im = im
    return g


class GaussRat:
    """Exact ``a + b*i`` with rational ``a``, ``b`` (stored as gmpy2 ``mpq``)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is _MPQ else mpq(re)
        self.im = im if type(im) is _MPQ else mpq(im)

    def __add__(self, other):
        return _gr(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return _gr(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __mul__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return _gr(a * c, b)
        return _gr(a * c - b * d, a * d + b * c)

    def __truediv__(self, other):
        c, d = other.re, other.im
        n = c * c + d * d
        if not n:
            raise DivisionByZero("division by zero Gaussian rational")
        a, b = self.re, self.im
        return _gr((a * c + b * d) / n, (b * c - a * d) / n)

    def conj(self):
        return _gr(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def render(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{im}*i"
        if not re:
            return ims
        if ims.startswith("-"):
            return f"{re} - {ims[1:]}"
        return f"{re} + {ims}"


G0 = GaussRat(0)
G1 = GaussRat(1)


# -- dense polynomials over GaussRat: lists indexed by degree, no trailing zeros

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(p, r):
    if not p or not r:
        return []
    out = [G0] * (len(p) + len(r) - 1)
    for a, ca in enumerate(p):
        if not ca:
            continue
        for b, cb in enumerate(r):
            out[a + b] = out[a + b] + ca * cb
    return _trim(out)


def _pdivmod(p, r):
    p = list(p)
    q = [G0] * max(len(p) - len(r) + 1, 0)
    lead = r[-1]
    while len(p) >= len(r) and p:
        c = p[-1] / lead
        k = len(p) - len(r)
        q[k] = c
        for idx, rc in enumerate(r):
            p[idx + k] = p[idx + k] - c * rc
        p.pop()
        _trim(p)
    return _trim(q), p


def _pmonic(p):
    lead = p[-1]
    return [c / lead for c in p]


def _pgcd(p, r):
    while r:
        _, rem = _pdivmod(p, r)
        p, r = r, rem
    return _pmonic(p) if p else p


_ONE_POLY = (G1,)


def _as_gauss(value):
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRat(value)
    if isinstance(value, complex):
        raise TypeError("floating point values are not exact coefficients")
    raise TypeError(f"cannot convert {value!r} to a Gaussian rational")


class Scalar:
    """Canonical element of Q(i)(q^(1/2)).

    Stored as ``num / den`` where ``num`` is a Laurent polynomial (dict from
    half-exponent to coefficient) and ``den`` a monic polynomial with nonzero
    constant term, coprime to ``num``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.num, self.den = value.num, value.den
        else:
            g = _as_gauss(value)
            self.num = {0: g} if g else {}
            self.den = _ONE_POLY
        self._hash = None

    @classmethod
    def _raw(cls, num, den=_ONE_POLY):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _normalized(cls, num, den):
        num = {k: c for k, c in num.items() if c}
        if not num:
            return ZERO
        den = list(den)
        if not den:
            raise DivisionByZero("zero denominator")
        shift = 0
        while not den[0]:
            den.pop(0)
            shift += 1
        if shift:
            num = {k - shift: c for k, c in num.items()}
        if len(den) == 1:
            lead = den[0]
            if lead != G1:
                num = {k: c / lead for k, c in num.items()}
            return cls._raw(num)
        kmin = min(num)
        kmax = max(num)
        npoly = [num.get(kmin + k, G0) for k in range(kmax - kmin + 1)]
        g = _pgcd(npoly, den)
        if len(g) > 1:
            npoly, _ = _pdivmod(npoly, g)
            den, _ = _pdivmod(den, g)
        lead = den[-1]
        if lead != G1:
            npoly = [c / lead for c in npoly]
            den = [c / lead for c in den]
        if len(den) == 1:
            den = _ONE_POLY
        return cls._raw({kmin + k: c for k, c in enumerate(npoly) if c}, tuple(den))

    @classmethod
    def q_half_power(cls, k):
        """``q^(k/2)``."""
        return cls._raw({k: G1})

    @classmethod
    def gauss(cls, re, im=0):
        return cls(GaussRat(re, im))

    # -- predicates
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.den == _ONE_POLY and len(self.num) == 1 and self.num.get(0) == G1

    def is_constant(self):
        """True when free of q."""
        return self.den == _ONE_POLY and all(k == 0 for k in self.num)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("scalar depends on q")
        return self.num.get(0, G0)

    def rational_value(self):
        """The value as a Fraction, or None if it is not real rational."""
        if not self.num:
            return Fraction(0)
        if not self.is_constant():
            return None
        g = self.num[0]
        return Fraction(int(g.re.numerator), int(g.re.denominator)) if not g.im else None

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return Scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            out = dict(self.num)
            for k, c in other.num.items():
                v = out.get(k)
                v = c if v is None else v + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            return Scalar._raw(out) if out else ZERO
        a = _lmul_poly(self.num, other.den)
        b = _lmul_poly(other.num, self.den)
        for k, c in b.items():
            a[k] = a.get(k, G0) + c
        return Scalar._normalized(a, _pmul(list(self.den), list(other.den)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            # a monomial times a polynomial cannot cancel
            if len(other.num) == 1:
                (k2, c2), = other.num.items()
                if k2 == 0 and c2 == G1:
                    return self
                return Scalar._raw({k + k2: c * c2 for k, c in self.num.items()})
            if len(self.num) == 1:
                (k1, c1), = self.num.items()
                if k1 == 0 and c1 == G1:
                    return other
                return Scalar._raw({k1 + k: c1 * c for k, c in other.num.items()})
        num = {}
        for k1, c1 in self.num.items():
            for k2, c2 in other.num.items():
                k = k1 + k2
                num[k] = num.get(k, G0) + c1 * c2
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            num = {k: c for k, c in num.items() if c}
            return Scalar._raw(num) if num else ZERO
        return Scalar._normalized(num, _pmul(list(self.den), list(other.den)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero scalar")
        kmin = min(self.num)
        poly = [self.num.get(kmin + k, G0) for k in range(max(self.num) - kmin + 1)]
        num = {k - kmin: c for k, c in enumerate(self.den) if c}
        return Scalar._normalized(num, poly)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def conj(self):
        num = {-k: c.conj() for k, c in self.num.items()}
        if self.den == _ONE_POLY:
            return Scalar._raw(num)
        deg = len(self.den) - 1
        den = [c.conj() for c in reversed(self.den)]
        num = {k + deg: c for k, c in num.items()}
        return Scalar._normalized(num, den)

    def q_euler(self):
        """``q d/dq`` of the scalar (a derivation of the coefficient field)."""
        # q d/dq = (1/2) s d/ds
        half = GaussRat(Fraction(1, 2))
        dn = {k: c * GaussRat(k) * half for k, c in self.num.items() if k}
        if self.den == _ONE_POLY:
            return Scalar._raw(dn) if dn else ZERO
        den = list(self.den)
        dden = {k: c * GaussRat(k) * half for k, c in enumerate(den) if k and c}
        top = _lmul_poly(dn, self.den)
        sub = {}
        for k1, c1 in self.num.items():
            for k2, c2 in dden.items():
                sub[k1 + k2] = sub.get(k1 + k2, G0) + c1 * c2
        for k, c in sub.items():
            top[k] = top.get(k, G0) - c
        return Scalar._normalized(top, _pmul(den, den))

    def specialize_q(self, value=1):
        """Substitute ``q = 1`` (the commutative limit)."""
        if value != 1:
            raise UnsupportedSpecialization(f"only q=1 is supported, got {value!r}")
        top = G0
        for c in self.num.values():
            top = top + c
        bottom = G0
        for c in self.den:
            bottom = bottom + c
        if not bottom:
            raise DivisionByZero("scalar has a pole at q = 1")
        return Scalar(top / bottom)

    # -- identity
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, GaussRat)):
            return self == Scalar(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), self.den))
        return self._hash

    def __repr__(self):
        return f"Scalar({self.render()})"

    def __str__(self):
        return self.render()

    def render(self, atomic=False):
        """Text form; ``atomic`` wraps compound values for use as a factor."""
        if not self.num:
            return "0"
        top = _render_laurent(self.num)
        if self.den == _ONE_POLY:
            if atomic and _is_compound(self.num):
                return f"({top})"
            return top
        bottom = _render_laurent({k: c for k, c in enumerate(self.den) if c})
        return f"({top})/({bottom})"


def _lmul_poly(num, den):
    out = {}
    for k1, c1 in num.items():
        for k2, c2 in enumerate(den):
            if c2:
                out[k1 + k2] = out.get(k1 + k2, G0) + c1 * c2
    return out


def _is_compound(num):
    if len(num) > 1:
        return True
    (k, c), = num.items()
    return bool(c.re) and bool(c.im)


def _render_qpow(k):
    if k == 0:
        return ""
    if k % 2:
        return f"q^({k}/2)"
    e = k // 2
    if e == 1:
        return "q"
    return f"q^{e}" if e > 0 else f"q^({e})"


def _render_laurent(num):
    parts = []
    for k in sorted(num, reverse=True):
        c = num[k]
        qp = _render_qpow(k)
        if not qp:
            parts.append(c.render())
        elif c == G1:
            parts.append(qp)
        elif c == GaussRat(-1):
            parts.append("-" + qp)
        else:
            cs = c.render()
            if c.re and c.im:
                cs = f"({cs})"
            parts.append(f"{cs}*{qp}")
    return _join_terms(parts)


def _join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: G1})
I = Scalar._raw({0: GaussRat(0, 1)})
Q = Scalar.q_half_power(2)
Q_HALF = Scalar.q_half_power(1)


def as_scalar(value):
    if isinstance(value, Scalar):
        return value
    return Scalar(value)


class CentralFn:
    """``p(t) / (t^i (1-t)^j)`` with Scalar coefficients, in lowest terms."""

    __slots__ = ("num", "i", "j", "_hash")

    def __init__(self, value=0):
        if isinstance(value, CentralFn):
            self.num, self.i, self.j = value.num, value.i, value.j
        else:
            s = as_scalar(value)
            self.num = (s,) if s else ()
            self.i = self.j = 0
        self._hash = None

    @classmethod
    def _raw(cls, num, i=0, j=0):
        obj = object.__new__(cls)
        obj.num = num
        obj.i = i
        obj.j = j
        obj._hash = None
        return obj

    @classmethod
    def make(cls, num, i=0, j=0):
        """Build from a numerator coefficient list and reduce."""
        num = list(num)
        while num and not num[-1]:
            num.pop()
        if not num:
            return CZERO
        if i < 0:
            num = [ZERO] * (-i) + num
            i = 0
        if j < 0:
            one_minus_t = [ONE, -ONE]
            for _ in range(-j):
                num = _smul(num, one_minus_t)
            j = 0
        while i > 0 and not num[0]:
            num.pop(0)
            i -= 1
        while j > 0:
            total = ZERO
            for c in num:
                total = total + c
            if total:
                break
            num = _div_one_minus_t(num)
            j -= 1
        return cls._raw(tuple(num), i, j)

    @classmethod
    def t(cls):
        return cls._raw((ZERO, ONE))

    @classmethod
    def one_minus_t(cls):
        return cls._raw((ONE, -ONE))

    # -- predicates
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and not self.i and not self.j

    def constant(self):
        if not self.is_constant():
            raise ValueError("central function depends on t")
        return self.num[0] if self.num else ZERO

    def is_polynomial(self):
        return not self.i and not self.j

    def is_one(self):
        return self.is_constant() and bool(self.num) and self.num[0].is_one()

    # -- arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, CentralFn):
            return other
        if isinstance(other, (Scalar, int, Fraction, GaussRat)):
            return CentralFn(other)
        return None

    def _lift(self, i, j):
        num = list(self.num)
        if i > self.i:
            num = [ZERO] * (i - self.i) + num
        one_minus_t = [ONE, -ONE]
        for _ in range(j - self.j):
            num = _smul(num, one_minus_t)
        return num

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.i == other.i and self.j == other.j and self.is_constant():
            return CentralFn.make([self.num[0] + other.num[0]] if other.is_constant()
                                  else _sadd(list(self.num), list(other.num)), self.i, self.j)
        i, j = max(self.i, other.i), max(self.j, other.j)
        return CentralFn.make(_sadd(self._lift(i, j), other._lift(i, j)), i, j)

    __radd__ = __add__

    def __neg__(self):
        return CentralFn._raw(tuple(-c for c in self.num), self.i, self.j)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return CZERO
        if self.is_constant() and other.is_constant():
            return CentralFn._raw((self.num[0] * other.num[0],))
        return CentralFn.make(_smul(list(self.num), list(other.num)),
                              self.i + other.i, self.j + other.j)

    __rmul__ = __mul__

    def scale(self, s):
        if not s:
            return CZERO
        return CentralFn._raw(tuple(c * s for c in self.num), self.i, self.j)

    def monomial_parts(self):
        """``(c, a, b)`` with ``self = c t^a (1-t)^b`` (a, b may be negative), or None."""
        if not self.num:
            return None
        num = list(self.num)
        a = 0
        while len(num) > 1 and not num[0]:
            num.pop(0)
            a += 1
        b = 0
        while len(num) > 1:
            total = ZERO
            for c in num:
                total = total + c
            if total:
                break
            num = _div_one_minus_t(num)
            b += 1
        if len(num) != 1:
            return None
        return num[0], a - self.i, b - self.j

    def inverse(self):
        """Inverse, defined only for ``c * t^a * (1-t)^b``."""
        if not self.num:
            raise DivisionByZero("inverse of zero central function")
        parts = self.monomial_parts()
        if parts is None:
            return None
        c, a, b = parts
        return _central_monomial(c.inverse(), -a, -b)

    def conj(self):
        return CentralFn._raw(tuple(c.conj() for c in self.num), self.i, self.j)

    def map_scalars(self, f):
        return CentralFn.make([f(c) for c in self.num], self.i, self.j)

    def derivative(self):
        """d/dt."""
        if not self.num:
            return CZERO
        p = list(self.num)
        dp = [c * k for k, c in enumerate(p)][1:]
        # f = p t^-i (1-t)^-j ; f' = (p' t (1-t) - i p (1-t) + j p t) / (t^(i+1) (1-t)^(j+1))
        t1t = [ZERO, ONE, -ONE]
        top = _smul(dp, t1t)
        if self.i:
            top = _sadd(top, [c * (-self.i) for c in _smul(p, [ONE, -ONE])])
        if self.j:
            top = _sadd(top, [c * self.j for c in _smul(p, [ZERO, ONE])])
        return CentralFn.make(top, self.i + 1, self.j + 1)

    def specialize_q(self, value=1):
        return self.map_scalars(lambda c: c.specialize_q(value))

    def eval_at(self, x):
        """Value of the numerator polynomial at a Scalar ``x`` divided by the denominator."""
        x = as_scalar(x)
        acc = ZERO
        for c in reversed(self.num):
            acc = acc * x + c
        den = (x ** self.i) * ((ONE - x) ** self.j)
        return acc / den

    # -- identity
    def __eq__(self, other):
        if isinstance(other, CentralFn):
            return self.num == other.num and self.i == other.i and self.j == other.j
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.i, self.j))
        return self._hash

    def __repr__(self):
        return f"CentralFn({self.render()})"

    def __str__(self):
        return self.render()

    def render(self, atomic=False):
        if not self.num:
            return "0"
        parts = []
        for k in range(len(self.num) - 1, -1, -1):
            c = self.num[k]
            if not c:
                continue
            tp = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not tp:
                parts.append(c.render(atomic=len(self.num) == 1 and bool(self.i or self.j)))
            elif c.is_one():
                parts.append(tp)
            elif (-c).is_one():
                parts.append("-" + tp)
            else:
                parts.append(f"{c.render(atomic=True)}*{tp}")
        top = _join_terms(parts)
        dens = []
        if self.i:
            dens.append("t^(-1)" if self.i == 1 else f"t^(-{self.i})")
        if self.j:
            dens.append(f"(1 - t)^(-{self.j})")
        if not dens:
            if atomic and (len(parts) > 1 or self.num[-1].render(atomic=True).startswith("(")):
                return f"({top})"
            return top
        if len(parts) > 1:
            top = f"({top})"
        if top == "1":
            return "*".join(dens)
        if top == "-1":
            return "-" + "*".join(dens)
        return "*".join([top] + dens)


def _sadd(p, r):
    n = max(len(p), len(r))
    out = [(p[k] if k < len(p) else ZERO) + (r[k] if k < len(r) else ZERO) for k in range(n)]
    while out and not out[-1]:
        out.pop()
    return out


def _smul(p, r):
    if not p or not r:
        return []
    out = [ZERO] * (len(p) + len(r) - 1)
    for a, ca in enumerate(p):
        if not ca:
            continue
        for b, cb in enumerate(r):
            if cb:
                out[a + b] = out[a + b] + ca * cb
    while out and not out[-1]:
        out.pop()
    return out


def _div_one_minus_t(p):
    # p(t) = (1 - t) r(t), given p(1) == 0; synthetic division by (t - 1), then negate
    n = len(p) - 1
    r = [ZERO] * n
    acc = ZERO
    for k in range(n, 0, -1):
        acc = acc + p[k]
        r[k - 1] = acc
    return [-c for c in r]


def _central_monomial(c, a, b):
    """``c * t^a * (1-t)^b`` for integer (possibly negative) a, b."""
    num = [c]
    i = j = 0
    if a >= 0:
        num = [ZERO] * a + num
    else:
        i = -a
    if b >= 0:
        for _ in range(b):
            num = _smul(num, [ONE, -ONE])
    else:
        j = -b
    return CentralFn._raw(tuple(num), i, j)


CZERO = CentralFn._raw(())
CONE = CentralFn._raw((ONE,))
