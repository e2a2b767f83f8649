"""Text and LaTeX forms of algebra elements.

Grammar accepted by :func:`parse_element`::

    expr   := [+|-] term ((+|-) term)*
    term   := unary ((*|/) unary)*
    unary  := - unary | power
    power  := atom [^ exponent]
    atom   := number | i | q | t | generator[*] | K-symbol | ( expr )[*]

A ``*`` directly after a generator or a closing parenthesis is the star
(adjoint) when it is followed by whitespace, the end of input, ``)``, ``^``,
``*``, ``+`` or ``-``; otherwise it is multiplication.  Exponents are
integers, optionally parenthesized; ``q`` also accepts half-integers such as
``q^(1/2)``.  Division ``x / y`` means ``x * invert(y)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, UnsupportedInversion
from .qalgebra import AlgebraSpec, TORUS, canonical_symbol, invert
from .scalars import I, Scalar

_STAR_FOLLOW = set(" \t\n)^*+-")


class _Parser:
    def __init__(self, text, algebra):
        self.s = text
        self.pos = 0
        self.alg = algebra

    def error(self, msg):
        raise ParseError(f"{msg} at position {self.pos} in {self.s!r}")

    def skip(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self):
        x = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return x

    def expr(self):
        neg = False
        if self.take("-"):
            neg = True
        else:
            self.take("+")
        x = self.term()
        if neg:
            x = -x
        while True:
            if self.take("+"):
                x = x + self.term()
            elif self.take("-"):
                x = x - self.term()
            else:
                return x

    def term(self):
        x = self.unary()
        while True:
            if self.take("*"):
                x = x * self.unary()
            elif self.take("/"):
                y = self.unary()
                try:
                    x = x * invert(y)
                except UnsupportedInversion as exc:
                    raise ParseError(f"cannot divide by {y.render()}: {exc}") from exc
            else:
                return x

    def unary(self):
        if self.take("-"):
            return -self.unary()
        return self.power()

    def _star_suffix(self):
        # no whitespace skipping: the star must be glued to its operand
        if self.pos < len(self.s) and self.s[self.pos] == "*":
            nxt = self.s[self.pos + 1] if self.pos + 1 < len(self.s) else " "
            if nxt in _STAR_FOLLOW:
                self.pos += 1
                return True
        return False

    def exponent(self):
        self.skip()
        if self.take("("):
            sign = -1 if self.take("-") else 1
            if sign == 1:
                self.take("+")
            num = self.integer()
            den = 1
            if self.take("/"):
                den = self.integer()
            if not self.take(")"):
                self.error("expected ')' after exponent")
            return Fraction(sign * num, den)
        sign = -1 if self.take("-") else 1
        return Fraction(sign * self.integer())

    def integer(self):
        self.skip()
        m = re.match(r"\d+", self.s[self.pos:])
        if not m:
            self.error("expected integer")
        self.pos += m.end()
        return int(m.group())

    def power(self):
        base, is_q = self.atom()
        if self.take("^"):
            e = self.exponent()
            if is_q:
                if (2 * e).denominator != 1:
                    self.error("q exponents must be multiples of 1/2")
                return self.alg.q_power(int(2 * e))
            if e.denominator != 1:
                self.error("fractional exponents are only allowed on q")
            try:
                return base ** int(e)
            except UnsupportedInversion as exc:
                raise ParseError(f"negative power of non-invertible {base.render()}") from exc
        return base

    def atom(self):
        self.skip()
        alg = self.alg
        if self.take("("):
            x = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            if self._star_suffix():
                x = x.star()
            return x, False
        m = re.match(r"\d+(\.\d+)?", self.s[self.pos:])
        if m:
            self.pos += m.end()
            return alg.const(Scalar(Fraction(m.group()))), False
        m = re.match(r"Kinv|K_\d{1,2}|K|[A-Za-z]+", self.s[self.pos:])
        if not m:
            self.error("expected an atom")
        name = m.group()
        self.pos += m.end()
        if name == "i":
            return alg.const(I), False
        if name == "q":
            return alg.q_power(2), True
        if name == "t":
            if alg.is_torus:
                self.error("t is not defined on the torus")
            return alg.t(), False
        if name.startswith("K"):
            sym = canonical_symbol(name)
            if sym not in alg.formal_symbols():
                self.error(f"formal symbol {name} not available in {alg}")
            return alg.gen(sym), False
        if name in ("U", "V", "Z", "W"):
            if (name in ("U", "V")) != alg.is_torus:
                self.error(f"generator {name} not in {alg}")
            if self._star_suffix():
                name += "*"
            return alg.gen(name), False
        self.error(f"unknown symbol {name!r}")


def parse_element(text, algebra):
    """Parse ``text`` into a normal-form element of ``algebra``."""
    if not isinstance(algebra, AlgebraSpec):
        raise TypeError("algebra must be an AlgebraSpec")
    if not text or not text.strip():
        raise ParseError("empty expression")
    return _Parser(text, algebra).parse()


def parse_scalar(text):
    """Parse a constant such as ``(1+i)/2`` or ``q^(1/2)``."""
    x = parse_element(text, AlgebraSpec(TORUS))
    s = x.scalar_value()
    if s is None:
        raise ParseError(f"{text!r} is not a constant")
    return s


# ---------------------------------------------------------------- rendering

def _base_factors(algebra, base):
    m, n = base
    out = []
    if algebra.is_torus:
        for g, e in (("U", m), ("V", n)):
            if e == 1:
                out.append(g)
            elif e:
                out.append(f"{g}^{e}" if e > 0 else f"{g}^({e})")
    else:
        for g, e in (("Z", m), ("W", n)):
            name = g if e > 0 else g + "*"
            if abs(e) == 1:
                out.append(name)
            elif e:
                out.append(f"{name}^{abs(e)}")
    return out


def _term_text(algebra, key, c):
    base, word = key
    factors = _base_factors(algebra, base) + list(word)
    if not factors:
        return c.render()
    mono = " * ".join(factors)
    if c.is_one():
        return mono
    if (-c).is_one():
        return "-" + mono
    return f"{c.render(atomic=True)} * {mono}"


def _join(parts):
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def render_element(x):
    if not x.terms:
        return "0"
    return _join([_term_text(x.algebra, k, c) for k, c in x.items()])


# ---------------------------------------------------------------- LaTeX

def _latex_scalar(s, atomic=False):
    text = s.render(atomic=atomic)
    text = re.sub(r"\^\((-?\d+(/\d+)?)\)", r"^{\1}", text)
    text = re.sub(r"\^(\d+)", r"^{\1}", text)
    text = re.sub(r"(\d+)/(\d+)(?!\})", r"\\tfrac{\1}{\2}", text)
    return text.replace("*", " ")


def _latex_zw(a, b):
    out = []
    for g, e in (("Z", a), ("W", b)):
        if e:
            out.append(f"|{g}|^{{{2 * e}}}")
    return " ".join(out)


def _latex_central(c, atomic=False):
    if not c.num:
        return "0"
    parts = c.monomial_parts()
    if parts is not None and (parts[1] or parts[2]):
        s, a, b = parts
        zw = _latex_zw(a, b)
        if s.is_one():
            return zw
        if (-s).is_one():
            return "-" + zw
        return f"{_latex_scalar(s, atomic=True)} {zw}"
    parts = []
    for k in range(len(c.num) - 1, -1, -1):
        a = c.num[k]
        if not a:
            continue
        tp = "" if k == 0 else ("|Z|^{2}" if k == 1 else f"|Z|^{{{2 * k}}}")
        if not tp:
            parts.append(_latex_scalar(a))
        elif a.is_one():
            parts.append(tp)
        elif (-a).is_one():
            parts.append("-" + tp)
        else:
            parts.append(f"{_latex_scalar(a, atomic=True)} {tp}")
    top = _join(parts)
    dens = []
    if c.i:
        dens.append(f"|Z|^{{{-2 * c.i}}}")
    if c.j:
        dens.append(f"|W|^{{{-2 * c.j}}}")
    if not dens:
        if atomic and (len(parts) > 1 or "+" in top[1:] or " - " in top):
            return f"\\left({top}\\right)"
        return top
    if len(parts) > 1:
        top = f"\\left({top}\\right)"
    if top == "1":
        return " ".join(dens)
    if top == "-1":
        return "-" + " ".join(dens)
    return " ".join([top] + dens)


def _latex_symbol(sym, tilde):
    k = r"\tilde{K}" if tilde else "K"
    if sym == "K":
        return k
    if sym == "Kinv":
        return k + "^{-1}"
    return f"{k}_{{{sym[2:]}}}"


def _latex_term(algebra, key, c):
    base, word = key
    tilde = algebra.is_torus
    factors = []
    m, n = base
    gens = ("U", "V") if algebra.is_torus else ("Z", "W")
    for g, e in zip(gens, (m, n)):
        if not e:
            continue
        if algebra.is_torus:
            factors.append(g if e == 1 else f"{g}^{{{e}}}")
        else:
            name = g if e > 0 else g + "^{*}"
            factors.append(name if abs(e) == 1 else f"({name})^{{{abs(e)}}}" if e < 0 else f"{g}^{{{e}}}")
    if len(word) == 2 and word[0] == "Kinv" and len(word[1]) == 3:
        # Kinv K_a = 2 H_a
        h = r"\tilde{H}" if tilde else "H"
        factors.append(f"{h}_{{{word[1][2]}}}")
        c = c.scale(Scalar(2))
    else:
        factors += [_latex_symbol(s, tilde) for s in word]
    if not factors:
        return _latex_central(c)
    mono = " ".join(factors)
    if c.is_one():
        return mono
    if (-c).is_one():
        return "-" + mono
    return f"{_latex_central(c, atomic=True)}\\, {mono}"


def render_latex(x):
    """LaTeX form with ``|Z|^2``, ``|W|^2`` and ``H_a = Kinv K_a / 2`` aliases."""
    if not x.terms:
        return "0"
    return _join([_latex_term(x.algebra, k, c) for k, c in x.items()])


def render(x, fmt="text"):
    if fmt == "latex":
        return render_latex(x)
    return render_element(x)

