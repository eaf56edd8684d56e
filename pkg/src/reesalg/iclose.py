"""Integral closure of monomial ideals and integral-dependence certificates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from . import fm
from .arith import Polynomial, PolyRing
from .errors import GuardExceeded, InvalidCertificateError, PreconditionError, UnsupportedError
from .gb import Ideal, ideal_power
from .modalg import (
    DEFAULT_GUARDS,
    Guards,
    LinearModule,
    minors_ideal_of_sym_power,
    sym_power,
)


def minimalize(exponents: Iterable[Sequence[int]]) -> list:
    """Drop exponents that dominate another one; sorted lexicographically decreasing."""
    pts = sorted(set(tuple(e) for e in exponents), key=lambda e: (sum(e), e))
    kept = []
    for e in pts:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return sorted(kept, reverse=True)


class MonomialIdeal:
    """Monomial ideal stored as its minimal exponent antichain."""

    def __init__(self, ring: PolyRing, exponents: Iterable[Sequence[int]]):
        if ring.ext_vars:
            ring = ring.base()
        self.ring = ring
        exps = [tuple(e) for e in exponents]
        for e in exps:
            if len(e) != ring.nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for ring {ring}")
        self.exponents = tuple(minimalize(exps))

    @classmethod
    def from_polynomials(cls, ring: PolyRing, polys: Sequence[Polynomial]) -> MonomialIdeal:
        exps = []
        for p in polys:
            if p.is_zero():
                continue
            if not p.is_monomial():
                raise UnsupportedError(f"unsupported: non-monomial generator {p}")
            exps.append(next(iter(p.terms)))
        return cls(ring, exps)

    @classmethod
    def from_ideal(cls, I: Ideal) -> MonomialIdeal:
        """Convert an ideal that happens to be monomial (checked on its reduced GB)."""
        if I.is_zero():
            return cls(I.ring, [])
        if not I.is_monomial():
            raise UnsupportedError("unsupported: non-monomial ideal")
        return cls(I.ring, [lead[1] for lead in I.leading_terms()])

    def is_zero(self) -> bool:
        return not self.exponents

    def polys(self) -> list:
        return [self.ring.monomial(e) for e in self.exponents]

    def to_ideal(self) -> Ideal:
        return Ideal(self.ring, self.polys())

    def contains_exponent(self, v: Sequence[int]) -> bool:
        return any(all(a <= b for a, b in zip(g, v)) for g in self.exponents)

    def contains(self, p: Polynomial) -> bool:
        """A polynomial lies in a monomial ideal iff each of its terms does."""
        return all(self.contains_exponent(e) for e in p.terms)

    def product(self, other: MonomialIdeal) -> MonomialIdeal:
        return MonomialIdeal(
            self.ring, (tuple(a + b for a, b in zip(g, h)) for g in self.exponents for h in other.exponents)
        )

    def power(self, m: int) -> MonomialIdeal:
        if m < 0:
            raise ValueError("power must be >= 0")
        out = MonomialIdeal(self.ring, [(0,) * self.ring.nvars])
        for _ in range(m):
            out = out.product(self)
        return out

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.ring == other.ring and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.ring, self.exponents))

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.polys()) + ")"

    __repr__ = __str__


class NewtonPolyhedron:
    """conv(points) + nonnegative orthant, with an exact inequality description.

    The description comes from projecting ``{(x, lam) : lam >= 0, sum lam = 1,
    sum lam_i p_i <= x}`` onto x by Fourier–Motzkin elimination.
    """

    def __init__(self, points: Iterable[Sequence[int]]):
        self.points = tuple(minimalize(points))
        if not self.points:
            raise PreconditionError("the zero ideal has no Newton polyhedron")
        self.dim = len(self.points[0])

    @cached_property
    def inequalities(self) -> list:
        s = self.dim
        pts = self.points
        m = len(pts)
        last = pts[-1]
        nvars = s + m - 1
        rows = []
        for i in range(m - 1):
            c = [0] * nvars
            c[s + i] = -1
            rows.append((c, 0))
        if m > 1:
            c = [0] * nvars
            for i in range(m - 1):
                c[s + i] = 1
            rows.append((c, 1))
        for k in range(s):
            c = [0] * nvars
            c[k] = -1
            for i in range(m - 1):
                c[s + i] = pts[i][k] - last[k]
            rows.append((c, -last[k]))
        projected = fm.eliminate(rows, nvars, range(s, nvars))
        return sorted((tuple(c[:s]), b) for c, b in projected if any(c[:s]))

    def contains(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if any(all(a <= b for a, b in zip(p, v)) for p in self.points):
            return True
        return all(sum(a * x for a, x in zip(c, v)) <= b for c, b in self.inequalities)


def _polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    if I.is_zero():
        raise PreconditionError("zero ideal")
    cached = getattr(I, "_np", None)
    if cached is None:
        cached = NewtonPolyhedron(I.exponents)
        I._np = cached
    return cached


def np_member(v: Sequence[int], I: MonomialIdeal) -> bool:
    """Whether x^v lies in the integral closure of the monomial ideal I."""
    return _polyhedron(I).contains(v)


def newton_closure(I: MonomialIdeal, guards: Guards = DEFAULT_GUARDS) -> MonomialIdeal:
    """Integral closure of a monomial ideal.

    Minimal generators of the closure never exceed the componentwise maximum
    of I's generators, so only that box is searched.
    """
    P = _polyhedron(I)
    bound = [max(e[i] for e in I.exponents) for i in range(I.ring.nvars)]
    size = 1
    for b in bound:
        size *= b + 1
    if size > guards.max_points:
        raise GuardExceeded(f"too large: closure search box has {size} > {guards.max_points} points")
    box = sorted(itertools.product(*(range(b + 1) for b in bound)), key=lambda e: (sum(e), e))
    found = []
    for v in box:
        if any(all(a <= b for a, b in zip(g, v)) for g in found):
            continue
        if P.contains(v):
            found.append(v)
    return MonomialIdeal(I.ring, found)


def closure_equal(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """Whether I and J have the same integral closure (same Newton polyhedron)."""
    if I.is_zero() or J.is_zero():
        raise PreconditionError("zero ideal")
    return all(np_member(e, J) for e in I.exponents) and all(np_member(e, I) for e in J.exponents)


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class IdealTarget:
    """a_j must lie in ideal^j."""

    ideal: Ideal


@dataclass(frozen=True)
class GradedTarget:
    """a_j must lie in S_{j·n}(M)."""

    module: LinearModule
    n: int


Target = Union[IdealTarget, GradedTarget]


@dataclass(frozen=True)
class IntegralCertificate:
    """Monic relation subject^p + a_1 subject^(p-1) + ... + a_p = 0."""

    subject: Polynomial
    coefficients: tuple
    target: Target

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.coefficients:
            raise InvalidCertificateError("a certificate needs degree p >= 1")
        for a in self.coefficients:
            if a.ring != self.subject.ring:
                raise InvalidCertificateError("coefficients and subject must share a ring")

    @property
    def p(self) -> int:
        return len(self.coefficients)

    def relation(self) -> Polynomial:
        x = self.subject
        p = self.p
        total = x ** p
        for j, a in enumerate(self.coefficients, start=1):
            if not a.is_zero():
                total = total + a * x ** (p - j)
        return total


@dataclass
class CertificateCheck:
    relation_zero: bool
    memberships: list  # one bool per coefficient

    @property
    def passed(self) -> bool:
        return self.relation_zero and all(self.memberships)


def _ideal_power_member(a: Polynomial, I: Ideal, j: int, guards: Guards) -> bool:
    if a.is_zero():
        return True
    gens = I.polys
    if gens and all(g.is_monomial() for g in gens):
        return MonomialIdeal.from_polynomials(I.ring, gens).power(j).contains(a)
    from math import comb

    if comb(len(gens) + j - 1, j) > guards.max_generators:
        raise GuardExceeded(f"too large: I^{j} has more than {guards.max_generators} generators")
    return ideal_power(I, j).contains(a)


def check_certificate(c: IntegralCertificate, guards: Guards = DEFAULT_GUARDS) -> CertificateCheck:
    relation_zero = c.relation().is_zero()
    memberships = []
    if isinstance(c.target, IdealTarget):
        I = c.target.ideal
        if c.subject.ring != I.ring:
            raise InvalidCertificateError("certificate and target ideal live in different rings")
        for j, a in enumerate(c.coefficients, start=1):
            memberships.append(_ideal_power_member(a, I, j, guards))
    else:
        M, n = c.target.module, c.target.n
        if c.subject.ring != M.ring:
            raise InvalidCertificateError("certificate and target module live in different rings")
        for j, a in enumerate(c.coefficients, start=1):
            if a.is_zero():
                memberships.append(True)
                continue
            if a.ext_degrees() != {j * n}:
                memberships.append(False)
                continue
            memberships.append(sym_power(M, j * n, guards).contains(a))
    return CertificateCheck(relation_zero, memberships)


def verify_certificate(c: IntegralCertificate, guards: Guards = DEFAULT_GUARDS) -> bool:
    """True iff the relation vanishes identically and every a_j meets its target."""
    return check_certificate(c, guards).passed


def lift_certificate(
    c: IntegralCertificate, Z: Polynomial, M: LinearModule, n: int, guards: Guards = DEFAULT_GUARDS
) -> IntegralCertificate:
    """Turn an equation for x over I(S_n(M)) into one for x·Z over S(M).

    Multiplying the relation by Z^p gives (xZ)^p + (a_1 Z)(xZ)^(p-1) + ... + a_p Z^p,
    and each a_j Z^j lies in S_{jn}(M) because I(S_n(M))·S_n(F) ⊆ S_n(M).
    """
    ring = M.ring
    s = ring.s
    if Z.ring != ring:
        Z = Z.to_ring(ring)
    if not Z.is_monomial() or Z.leading_coefficient() != 1:
        raise PreconditionError(f"Z = {Z} must be a monic T-monomial")
    (ze,) = Z.terms
    if any(ze[:s]) or sum(ze[s:]) != n:
        raise PreconditionError(f"Z = {Z} must be a monomial of degree {n} in {', '.join(ring.ext_vars)}")
    In = minors_ideal_of_sym_power(M, n, guards)
    base = ring.base()
    subject = c.subject if c.subject.ring == base else c.subject.to_ring(base)
    coeffs = tuple(a if a.ring == base else a.to_ring(base) for a in c.coefficients)
    over_minors = IntegralCertificate(subject, coeffs, IdealTarget(In))
    if not verify_certificate(over_minors, guards):
        raise InvalidCertificateError("certificate does not verify over I(S_n(M))")
    lifted = tuple(a.to_ring(ring) * Z ** j for j, a in enumerate(coeffs, start=1))
    return IntegralCertificate(subject.to_ring(ring) * Z, lifted, GradedTarget(M, n))
