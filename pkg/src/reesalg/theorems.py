"""Degree-window finite-generation checks, the up-to-closure minors comparison,
and the Rees gap staircase."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .arith import Polynomial, monomials_of_degree
from .errors import GuardExceeded, InvalidCertificateError, NotMPrimaryError, PreconditionError
from .gb import is_m_primary
from .iclose import (
    GradedTarget,
    IntegralCertificate,
    MonomialIdeal,
    check_certificate,
    closure_equal,
    newton_closure,
)
from .modalg import (
    DEFAULT_GUARDS,
    Guards,
    LinearModule,
    graded_product,
    minors_ideal_of_sym_power,
    module_minors,
)


@dataclass(frozen=True)
class Extra:
    """A certified element of V_degree adjoined to S(M)."""

    degree: int
    element: Polynomial
    certificate: IntegralCertificate
    label: str = ""


@dataclass
class GradedWindowReport:
    k: int
    N: int
    verdicts: dict
    failures: list = field(default_factory=list)  # (n, label, element)
    products_tested: dict = field(default_factory=dict)
    generator_set: list | None = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())


def _products_of_degree(gens: Sequence, n: int, start: int = 0):
    """Multisets of (label, degree, poly) generators with total degree n."""
    if n == 0:
        yield ()
        return
    for i in range(start, len(gens)):
        deg = gens[i][1]
        if deg <= n:
            for rest in _products_of_degree(gens, n - deg, i):
                yield (i,) + rest


def check_fingen_window(
    M: LinearModule, extras: Sequence[Extra], k: int, N: int, guards: Guards = DEFAULT_GUARDS
) -> GradedWindowReport:
    """Test B_n ⊆ S_{n-k}(M)·S_k(F) for n in [k, N], B = S(M)[extras]."""
    if k < 0 or N < k:
        raise PreconditionError("need 0 <= k <= N")
    ring = M.ring
    gens = [(label, 1, form) for label, form in zip(M.labels, M.forms())]
    for idx, ex in enumerate(extras):
        cert = ex.certificate
        if ex.degree < 1:
            raise InvalidCertificateError("extras must have positive degree")
        if not isinstance(cert.target, GradedTarget) or cert.target.n != ex.degree:
            raise InvalidCertificateError(f"extra {idx}: certificate must target S(M) in degree {ex.degree}")
        element = ex.element if ex.element.ring == ring else ex.element.to_ring(ring)
        subject = cert.subject if cert.subject.ring == ring else cert.subject.to_ring(ring)
        if subject != element:
            raise InvalidCertificateError(f"extra {idx}: certificate subject differs from the element")
        if element.ext_degrees() - {ex.degree}:
            raise InvalidCertificateError(f"extra {idx}: element is not of T-degree {ex.degree}")
        if not check_certificate(cert, guards).passed:
            raise InvalidCertificateError(f"extra {idx}: certificate does not verify")
        gens.append((ex.label or f"E{idx + 1}", ex.degree, element))

    verdicts, failures, tested = {}, [], {}
    for n in range(k, N + 1):
        if n == 0:
            verdicts[0] = True
            tested[0] = 1
            continue
        target = graded_product(M, n - k, k, guards)
        seen = set()
        ok = True
        count = 0
        for combo in _products_of_degree(gens, n):
            count += 1
            if count > guards.max_products:
                raise GuardExceeded(f"too large: more than {guards.max_products} products in degree {n}")
            p = ring.one()
            for i in combo:
                p = p * gens[i][2]
            if p.is_zero():
                continue
            p = p.monic()
            if p in seen:
                continue
            seen.add(p)
            if not target.contains(p):
                ok = False
                failures.append((n, "*".join(gens[i][0] for i in combo), p))
        verdicts[n] = ok
        tested[n] = len(seen)

    report = GradedWindowReport(k, N, verdicts, failures, tested)
    if report.passed and all(deg <= N - k for _, deg, _ in gens):
        # B up to degree N is generated over S(M) by B-products below degree k and S_k(F)
        s = ring.s
        low = []
        for n in range(0, k):
            for combo in _products_of_degree(gens, n):
                p = ring.one()
                for i in combo:
                    p = p * gens[i][2]
                if p and p.monic() not in low:
                    low.append(p.monic())
        top = [ring.monomial((0,) * s + e) for e in monomials_of_degree(M.r, k)]
        report.generator_set = low + [t for t in top if t not in low]
    return report


@dataclass
class BVReport:
    n: int
    r: int
    exponent: int
    minors_of_module: MonomialIdeal
    minors_of_power: MonomialIdeal
    power_of_minors: MonomialIdeal
    equal: bool

    @property
    def passed(self) -> bool:
        return self.equal

    @property
    def literally_equal(self) -> bool:
        return self.minors_of_power == self.power_of_minors


def check_bv(M: LinearModule, n: int, guards: Guards = DEFAULT_GUARDS) -> BVReport:
    """Compare I(S_n(M)) with I(M)^C(n+r-1, r) up to integral closure."""
    IM = MonomialIdeal.from_ideal(module_minors(M, guards))
    In = MonomialIdeal.from_ideal(minors_ideal_of_sym_power(M, n, guards))
    if IM.is_zero() or In.is_zero():
        raise PreconditionError("I(M) or I(S_n(M)) is the zero ideal")
    e = comb(n + M.r - 1, M.r)
    power = IM.power(e)
    return BVReport(n, M.r, e, IM, In, power, closure_equal(In, power))


def staircase(n: int, t: int, k: int, r: int = 1) -> int:
    """m(n): the largest m with C(m*t + k + r - 1, r) <= n, or 0 if none."""
    m = 0
    while comb((m + 1) * t + k + r - 1, r) <= n:
        m += 1
    return m


@dataclass
class GapRow:
    n: int
    m: int
    verdict: bool
    sharp: int | None = None


@dataclass
class GapReport:
    t: int
    k: int
    r: int
    rows: list

    @property
    def passed(self) -> bool:
        return all(row.verdict for row in self.rows)


def _sharp_exponent(gens: Sequence, I: MonomialIdeal) -> int:
    m = 0
    power = I.power(1)
    while all(power.contains_exponent(g) for g in gens):
        m += 1
        power = power.product(I)
    return m


def rees_gap(
    I: MonomialIdeal, k: int, N: int, r: int = 1, sharp: bool = False, guards: Guards = DEFAULT_GUARDS
) -> GapReport:
    """Check closure(I^n) ⊆ I^m(n) for n = 1..N along the staircase n(m) = m*t + k."""
    if k < 0 or N < 0:
        raise PreconditionError("need k, N >= 0")
    if I.is_zero():
        raise NotMPrimaryError("not m-primary: zero ideal")
    try:
        primary, t = is_m_primary(I.to_ideal())
    except PreconditionError as exc:
        raise NotMPrimaryError(f"not m-primary: {exc}") from None
    if not primary:
        raise NotMPrimaryError("not m-primary")
    rows = []
    power = MonomialIdeal(I.ring, [(0,) * I.ring.nvars])
    for n in range(1, N + 1):
        power = power.product(I)
        if len(power.exponents) > guards.max_generators:
            raise GuardExceeded(f"too large: I^{n} has more than {guards.max_generators} generators")
        closure = newton_closure(power, guards)
        m = staircase(n, t, k, r)
        target = I.power(m)
        verdict = all(target.contains_exponent(g) for g in closure.exponents)
        rows.append(GapRow(n, m, verdict, _sharp_exponent(closure.exponents, I) if sharp else None))
    return GapReport(t, k, r, rows)


def rees_gap_for_module(M: LinearModule, k: int, N: int, sharp: bool = False, guards: Guards = DEFAULT_GUARDS):
    """rees_gap on I = I(M) with the binomial staircase for r = rank F."""
    I = MonomialIdeal.from_ideal(module_minors(M, guards))
    return rees_gap(I, k, N, r=M.r, sharp=sharp, guards=guards)
