"""Exact coefficient fields and sparse multivariate polynomials.

A :class:`PolyRing` carries the coefficient field, the variables of the base
ring ``R = k[x_1..x_s]`` and optionally the basis symbols ``T_1..T_r`` of a
free module ``F``.  A :class:`Polynomial` is an immutable mapping from
exponent vectors to nonzero coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ParseError, RingMismatchError

Exponent = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]

MONOMIAL_ORDERS = ("grevlex", "grlex")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefField:
    """The rationals (``modulus=None``) or the prime field ``F_p``."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> CoefField:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> CoefField:
        return cls(p)

    @property
    def kind(self) -> str:
        return "QQ" if self.modulus is None else "GF"

    def __str__(self):
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    def convert(self, value) -> Coefficient:
        p = self.modulus
        if isinstance(value, Fraction):
            if p is None:
                return value.numerator if value.denominator == 1 else value
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        if isinstance(value, int):
            return value if p is None else value % p
        raise TypeError(f"cannot use {type(value).__name__} as a coefficient")

    def normalize(self, c: Coefficient) -> Coefficient:
        """Bring the result of a raw ``+``/``-``/``*`` back to canonical form."""
        p = self.modulus
        if p is not None:
            return c % p
        if type(c) is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def div(self, a: Coefficient, b: Coefficient) -> Coefficient:
        if b == 0:
            raise ZeroDivisionError("division by zero coefficient")
        p = self.modulus
        if p is None:
            return self.normalize(Fraction(a) / b)
        return a * pow(b, -1, p) % p

    def inv(self, a: Coefficient) -> Coefficient:
        return self.div(1, a)


_GRADED_KEYS = {
    # larger key == larger monomial
    "grevlex": lambda e: (sum(e), tuple(-x for x in reversed(e))),
    "grlex": lambda e: (sum(e), tuple(e)),
}


@dataclass(frozen=True)
class PolyRing:
    """Coefficient field, base variables and optional free-module symbols.

    Exponent vectors have length ``len(base_vars) + len(ext_vars)``.  The
    monomial order is graded on the base variables; when ``ext_vars`` are
    present, terms are compared on the ``T``-exponents first (lexicographic)
    and on the base part second.
    """

    field: CoefField
    base_vars: tuple
    ext_vars: tuple = ()
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "base_vars", tuple(self.base_vars))
        object.__setattr__(self, "ext_vars", tuple(self.ext_vars))
        names = self.base_vars + self.ext_vars
        if len(self.base_vars) < 1:
            raise ValueError("a ring needs at least one base variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        if self.order not in MONOMIAL_ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}; use one of {MONOMIAL_ORDERS}")

    @property
    def variables(self) -> tuple:
        return self.base_vars + self.ext_vars

    @property
    def nvars(self) -> int:
        return len(self.base_vars) + len(self.ext_vars)

    @property
    def s(self) -> int:
        return len(self.base_vars)

    @property
    def r(self) -> int:
        return len(self.ext_vars)

    def base(self) -> PolyRing:
        if not self.ext_vars:
            return self
        return PolyRing(self.field, self.base_vars, (), self.order)

    def with_ext(self, r: int, prefix: str = "T") -> PolyRing:
        return PolyRing(self.field, self.base_vars, tuple(f"{prefix}{i + 1}" for i in range(r)), self.order)

    @cached_property
    def base_key(self):
        return _GRADED_KEYS[self.order]

    @cached_property
    def monomial_key(self):
        bkey = self.base_key
        s = self.s
        if not self.ext_vars:
            return bkey
        return lambda e: (e[s:], bkey(e[:s]))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name: str) -> Polynomial:
        try:
            i = self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> tuple:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exponent: Sequence[int], coef=1) -> Polynomial:
        return Polynomial(self, {tuple(exponent): coef})

    def parse(self, text: str) -> Polynomial:
        return poly_parse(text, self)

    def __str__(self):
        names = ", ".join(self.variables)
        return f"{self.field}[{names}] ({self.order})"


class Polynomial:
    """Immutable sparse polynomial.

    Arithmetic with plain ints/Fractions promotes them to constants.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, Coefficient] | None = None, *, _clean=False):
        self.ring = ring
        self._hash = None
        if _clean:
            self._terms = terms
            return
        field = ring.field
        n = ring.nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = field.convert(c)
            if c:
                clean[e] = field.normalize(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        self._terms = clean

    # -- basic accessors -------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, Coefficient]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.sorted_terms())

    def sorted_terms(self) -> list:
        """Terms in decreasing monomial order."""
        key = self.ring.monomial_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        """True for a single term ``c * x^a``."""
        return len(self._terms) == 1

    def constant_term(self) -> Coefficient:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.monomial_key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_coefficient(self) -> Coefficient:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        """Smallest total degree of a term (-1 for zero)."""
        return min((sum(e) for e in self._terms), default=-1)

    def ext_degrees(self) -> set:
        s = self.ring.s
        return {sum(e[s:]) for e in self._terms}

    def monic(self) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = field.normalize(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, {e: field.normalize(-c) for e, c in self._terms.items()}, _clean=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> Polynomial:
        field = self.ring.field
        c = field.convert(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: field.normalize(v * c) for e, v in self._terms.items()}, _clean=True)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        clean = {}
        for e, c in out.items():
            c = field.normalize(c)
            if c:
                clean[e] = c
        return Polynomial(self.ring, clean, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, exponent: Sequence[int], coef=1) -> Polynomial:
        field = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exponent)): field.normalize(c * coef) for e, c in self._terms.items()},
            _clean=True,
        )

    def exact_div(self, divisor: Polynomial) -> Polynomial:
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.ring.field
        key = self.ring.monomial_key
        de, dc = divisor.leading_term()
        rest = dict(self._terms)
        quotient: dict = {}
        while rest:
            e = max(rest, key=key)
            c = rest[e]
            q = tuple(a - b for a, b in zip(e, de))
            if any(x < 0 for x in q):
                raise ArithmeticError("division is not exact")
            qc = field.div(c, dc)
            quotient[q] = qc
            for e2, c2 in divisor._terms.items():
                t = tuple(a + b for a, b in zip(e2, q))
                v = field.normalize(rest.get(t, 0) - qc * c2)
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return Polynomial(self.ring, quotient, _clean=True)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- ring changes ----------------------------------------------------
    def to_ring(self, ring: PolyRing) -> Polynomial:
        """Re-home into a ring that shares the base variables (adds/drops ext vars)."""
        if ring.base_vars != self.ring.base_vars or ring.field != self.ring.field:
            raise RingMismatchError("rings must share field and base variables")
        s = ring.s
        r_new = ring.r
        out = {}
        for e, c in self._terms.items():
            ext = e[s:]
            if len(ext) > r_new and any(ext[r_new:]):
                raise RingMismatchError(f"polynomial uses variables not in {ring}")
            ext = tuple(ext[:r_new]) + (0,) * max(0, r_new - len(ext))
            out[e[:s] + ext] = c
        return Polynomial(ring, out, _clean=True)

    # -- printing --------------------------------------------------------
    def __str__(self):
        return poly_print(self)

    def __repr__(self):
        return f"Polynomial({poly_print(self)!r})"


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def monomial_str(ring: PolyRing, e: Exponent) -> str:
    parts = []
    for name, k in zip(ring.variables, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _coef_str(c: Coefficient) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    return str(c)


def poly_print(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        mag = -c if neg else c
        mono = monomial_str(p.ring, e)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos=pos, text=text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(ring.variables)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        found = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"{msg}, found {found}", pos=tok[2], text=self.text)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == op:
            return self.take()
        self.error(f"expected {op!r}")

    def parse(self) -> Polynomial:
        ring = self.ring
        result = {}
        field = ring.field
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        while True:
            e, c = self.term()
            c = field.normalize(c * sign)
            result[e] = field.normalize(result.get(e, 0) + c)
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = 1 if tok[1] == "+" else -1
                continue
            self.error("expected '+', '-' or end of input")
        return Polynomial(ring, {e: c for e, c in result.items() if c}, _clean=True)

    def term(self):
        tok = self.peek()
        coef = 1
        if tok[0] == "int":
            coef = self.coeff()
            nxt = self.peek()
            if not (nxt[0] == "op" and nxt[1] == "*"):
                return (0,) * self.ring.nvars, coef
            self.take()
        elif tok[0] != "ident":
            self.error("expected a coefficient or variable")
        e = [0] * self.ring.nvars
        self.factor(e)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            self.factor(e)
        return tuple(e), coef

    def coeff(self):
        tok = self.take()
        field = self.ring.field
        num = int(tok[1])
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "/":
            if field.modulus is not None:
                self.error("fractions are not allowed over a prime field", nxt)
            self.take()
            den_tok = self.peek()
            if den_tok[0] != "int":
                self.error("expected a denominator")
            self.take()
            den = int(den_tok[1])
            if den == 0:
                raise ParseError("zero denominator", pos=den_tok[2], text=self.text)
            return field.convert(Fraction(num, den))
        return field.convert(num)

    def factor(self, e):
        tok = self.peek()
        if tok[0] != "ident":
            self.error("expected a variable")
        self.take()
        if tok[1] not in self.index:
            raise ParseError(f"unknown variable {tok[1]!r}", pos=tok[2], text=self.text)
        k = 1
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "^":
            self.take()
            exp_tok = self.peek()
            if exp_tok[0] != "int":
                self.error("expected an exponent")
            self.take()
            k = int(exp_tok[1])
        e[self.index[tok[1]]] += k


def poly_parse(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` in the package polynomial grammar.

    >>> R = PolyRing(CoefField(), ("x", "y"))
    >>> str(poly_parse("x + x", R))
    '2*x'
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}")
    return _Parser(text, ring).parse()


def exponents_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, degree: int) -> Iterable[tuple]:
    """All exponent vectors of the given total degree, lexicographically decreasing."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            yield (first,) + rest
