"""Gröbner bases for ideals of R and submodules of free modules R^N.

Module elements are handled internally as dicts ``{(position, exponent):
coefficient}``.  Positions are 0-based; under position-over-term ordering a
smaller position index is the larger position (``e_1 > e_2 > ...``).
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Sequence

from .arith import Polynomial, PolyRing, monomials_of_degree
from .errors import PreconditionError, RankMismatchError, RingMismatchError

MODULE_ORDERS = ("pot", "top")


@dataclass(frozen=True)
class FreeModuleElement:
    """A vector of ``rank`` polynomials over the base ring."""

    ring: PolyRing
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for c in comps:
            if not isinstance(c, Polynomial) or c.ring != self.ring:
                raise RingMismatchError("module components must live in the module's base ring")

    @classmethod
    def of(cls, ring: PolyRing, comps: Sequence) -> FreeModuleElement:
        return cls(ring, tuple(c if isinstance(c, Polynomial) else ring.constant(c) for c in comps))

    @classmethod
    def unit(cls, ring: PolyRing, rank: int, i: int, coef: Polynomial | None = None) -> FreeModuleElement:
        comps = [ring.zero()] * rank
        comps[i] = coef if coef is not None else ring.one()
        return cls(ring, tuple(comps))

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: FreeModuleElement) -> FreeModuleElement:
        _check_rank(self, other)
        return FreeModuleElement(self.ring, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: FreeModuleElement) -> FreeModuleElement:
        _check_rank(self, other)
        return FreeModuleElement(self.ring, tuple(a - b for a, b in zip(self.components, other.components)))

    def __mul__(self, scalar) -> FreeModuleElement:
        return FreeModuleElement(self.ring, tuple(c * scalar for c in self.components))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _check_rank(a: FreeModuleElement, b: FreeModuleElement):
    if a.rank != b.rank:
        raise RankMismatchError(f"rank {a.rank} vs rank {b.rank}")
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


# -- internal vector helpers ---------------------------------------------


def _to_vec(e: FreeModuleElement) -> dict:
    out = {}
    for i, comp in enumerate(e.components):
        for exp, c in comp.terms.items():
            out[(i, exp)] = c
    return out


def _from_vec(vec: dict, ring: PolyRing, rank: int) -> FreeModuleElement:
    comps = [dict() for _ in range(rank)]
    for (i, exp), c in vec.items():
        comps[i][exp] = c
    return FreeModuleElement(ring, tuple(Polynomial(ring, d, _clean=True) for d in comps))


def _module_key(ring: PolyRing, order: str):
    mkey = ring.monomial_key
    if order == "pot":
        return lambda t: (-t[0], mkey(t[1]))
    if order == "top":
        return lambda t: (mkey(t[1]), -t[0])
    raise ValueError(f"unknown module order {order!r}; use one of {MODULE_ORDERS}")


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _axpy(target: dict, source: dict, coef, shift: tuple, field):
    """target -= coef * x^shift * source  (in place)."""
    norm = field.normalize
    for (pos, exp), c in source.items():
        t = (pos, tuple(a + b for a, b in zip(exp, shift)))
        v = norm(target.get(t, 0) - coef * c)
        if v:
            target[t] = v
        else:
            target.pop(t, None)


def _poly_axpy(target: dict, source: dict, coef, shift: tuple, field):
    norm = field.normalize
    for exp, c in source.items():
        t = tuple(a + b for a, b in zip(exp, shift))
        v = norm(target.get(t, 0) - coef * c)
        if v:
            target[t] = v
        else:
            target.pop(t, None)


class _Engine:
    """Buchberger's algorithm with the product and chain criteria."""

    def __init__(self, ring: PolyRing, rank: int, order: str, track: bool):
        self.ring = ring
        self.field = ring.field
        self.rank = rank
        self.key = _module_key(ring, order)
        self.track = track
        self.basis: list = []
        self.leads: list = []
        self.reps: list = []

    def lead(self, vec):
        return max(vec, key=self.key)

    def make_monic(self, vec, rep):
        lt = self.lead(vec)
        inv = self.field.inv(vec[lt])
        norm = self.field.normalize
        vec = {t: norm(c * inv) for t, c in vec.items()}
        if rep is not None:
            rep = [{e: norm(c * inv) for e, c in r.items()} for r in rep]
        return vec, rep, lt

    def reduce(self, vec, rep, basis, leads, reps):
        """Full reduction of ``vec`` by a monic ``basis``; returns (remainder, rep)."""
        field = self.field
        vec = dict(vec)
        rep = [dict(r) for r in rep] if rep is not None else None
        rem = {}
        key = self.key
        while vec:
            lt = max(vec, key=key)
            c = vec[lt]
            pos, exp = lt
            for g, (gpos, gexp), grep in zip(basis, leads, reps):
                if gpos == pos and _divides(gexp, exp):
                    shift = tuple(a - b for a, b in zip(exp, gexp))
                    _axpy(vec, g, c, shift, field)
                    if rep is not None:
                        for r_out, r_g in zip(rep, grep):
                            _poly_axpy(r_out, r_g, c, shift, field)
                    break
            else:
                rem[lt] = c
                del vec[lt]
        return rem, rep

    def s_vector(self, i, j):
        gi, gj = self.basis[i], self.basis[j]
        (_, ei), (_, ej) = self.leads[i], self.leads[j]
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        si = tuple(a - b for a, b in zip(lcm, ei))
        sj = tuple(a - b for a, b in zip(lcm, ej))
        vec: dict = {}
        _axpy(vec, gi, -1, si, self.field)
        _axpy(vec, gj, 1, sj, self.field)
        rep = None
        if self.track:
            rep = [dict() for _ in self.reps[i]]
            for r_out, r_i, r_j in zip(rep, self.reps[i], self.reps[j]):
                _poly_axpy(r_out, r_i, -1, si, self.field)
                _poly_axpy(r_out, r_j, 1, sj, self.field)
        return vec, rep

    def lcm_of(self, pair):
        i, j = pair
        return self.leads[i][0], tuple(max(a, b) for a, b in zip(self.leads[i][1], self.leads[j][1]))

    def add(self, vec, rep, pending):
        vec, rep, lt = self.make_monic(vec, rep)
        k = len(self.basis)
        self.basis.append(vec)
        self.leads.append(lt)
        self.reps.append(rep)
        for i in range(k):
            if self.leads[i][0] == lt[0]:
                pending.add((i, k))

    def skip_pair(self, pair, pending) -> bool:
        i, j = pair
        (pos, ei), (_, ej) = self.leads[i], self.leads[j]
        if self.rank == 1 and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            return True
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        for k, (kpos, ek) in enumerate(self.leads):
            if k == i or k == j or kpos != pos or not _divides(ek, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def run(self, gens: list):
        nvars = self.ring.nvars
        m = len(gens)
        pending: set = set()
        for idx, vec in enumerate(gens):
            if not vec:
                continue
            rep = None
            if self.track:
                rep = [dict() for _ in range(m)]
                rep[idx] = {(0,) * nvars: 1}
            self.add(vec, rep, pending)
        key = self.key
        while pending:
            pair = min(pending, key=lambda p: (key(self.lcm_of(p)), p))
            pending.discard(pair)
            if self.skip_pair(pair, pending):
                continue
            vec, rep = self.s_vector(*pair)
            vec, rep = self.reduce(vec, rep, self.basis, self.leads, self.reps)
            if vec:
                self.add(vec, rep, pending)
        return self.finalize()

    def finalize(self):
        """Minimalize and interreduce into the reduced Gröbner basis."""
        keep = []
        n = len(self.basis)
        for i in range(n):
            pos, e = self.leads[i]
            dominated = False
            for j in range(n):
                if j == i or self.leads[j][0] != pos or not _divides(self.leads[j][1], e):
                    continue
                if self.leads[j][1] != e or j < i:
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        basis = [self.basis[i] for i in keep]
        leads = [self.leads[i] for i in keep]
        reps = [self.reps[i] for i in keep]
        out_b, out_r = [], []
        for i in range(len(basis)):
            others = [k for k in range(len(basis)) if k != i]
            vec, rep = self.reduce(
                basis[i], reps[i], [basis[k] for k in others], [leads[k] for k in others], [reps[k] for k in others]
            )
            vec, rep, _ = self.make_monic(vec, rep)
            out_b.append(vec)
            out_r.append(rep)
        order = sorted(range(len(out_b)), key=lambda i: self.key(leads[i]), reverse=True)
        return [out_b[i] for i in order], [leads[i] for i in order], [out_r[i] for i in order]


class Submodule:
    """Submodule of ``R^rank`` given by generators.

    Zero and duplicate generators are dropped.  The Gröbner basis is computed
    lazily, once, and cached.
    """

    def __init__(self, ring: PolyRing, rank: int, generators: Sequence, order: str = "pot", *, _is_groebner=False):
        if ring.ext_vars:
            raise RingMismatchError("submodules live over the base ring (no T variables)")
        if order not in MODULE_ORDERS:
            raise ValueError(f"unknown module order {order!r}")
        self.ring = ring
        self.rank = rank
        self.order = order
        gens = []
        seen = set()
        for g in generators:
            g = self._coerce(g)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        self._lock = threading.Lock()
        self._gb = None
        self._is_groebner = _is_groebner

    def _coerce(self, g) -> FreeModuleElement:
        if isinstance(g, Polynomial):
            g = FreeModuleElement(self.ring, (g,))
        elif not isinstance(g, FreeModuleElement):
            g = FreeModuleElement.of(self.ring, g)
        if g.ring != self.ring:
            raise RingMismatchError(f"{g.ring} vs {self.ring}")
        if g.rank != self.rank:
            raise RankMismatchError(f"generator of rank {g.rank} in a rank-{self.rank} module")
        return g

    def _engine_result(self, track=False):
        eng = _Engine(self.ring, self.rank, self.order, track)
        return eng.run([_to_vec(g) for g in self.generators])

    @property
    def groebner(self):
        """(basis vecs, leading terms) of the reduced Gröbner basis."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    basis, leads, _ = self._engine_result()
                    self._gb = (basis, leads)
        return self._gb

    def normal_form(self, e) -> FreeModuleElement:
        e = self._coerce(e)
        basis, leads = self.groebner
        eng = _Engine(self.ring, self.rank, self.order, False)
        rem, _ = eng.reduce(_to_vec(e), None, basis, leads, [None] * len(basis))
        return _from_vec(rem, self.ring, self.rank)

    def contains(self, e) -> bool:
        return self.normal_form(e).is_zero()

    def __contains__(self, e) -> bool:
        return self.contains(e)

    def leading_terms(self) -> list:
        return list(self.groebner[1])

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Submodule(rank={self.rank}, <{gens}>)"


class Ideal(Submodule):
    """Ideal of the base ring: a rank-1 submodule whose generators are polynomials."""

    def __init__(self, ring: PolyRing, generators: Sequence, order: str = "pot", *, _is_groebner=False):
        super().__init__(ring, 1, generators, order, _is_groebner=_is_groebner)

    @property
    def polys(self) -> list:
        return [g.components[0] for g in self.generators]

    def contains(self, p) -> bool:
        if isinstance(p, (int,)):
            p = self.ring.constant(p)
        return super().contains(p)

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        """True when the ideal is generated by monomials (reduced GB test)."""
        basis, _ = self.groebner
        return all(len(v) == 1 for v in basis)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(p) for p in self.polys) + ")"


def groebner_basis(gens: Submodule, order: str | None = None) -> Submodule:
    """Reduced Gröbner basis of ``gens`` as a new :class:`Submodule`."""
    order = order or gens.order
    src = gens if order == gens.order else type_like(gens, gens.generators, order)
    basis, leads = src.groebner
    elems = [_from_vec(v, gens.ring, gens.rank) for v in basis]
    out = type_like(gens, elems, order, is_gb=True)
    out._gb = (basis, leads)
    return out


def type_like(template: Submodule, gens, order, is_gb=False) -> Submodule:
    if isinstance(template, Ideal):
        return Ideal(template.ring, gens, order, _is_groebner=is_gb)
    return Submodule(template.ring, template.rank, gens, order, _is_groebner=is_gb)


def membership(e, S: Submodule) -> bool:
    """Whether ``e`` lies in the submodule generated by ``S`` (normal form test)."""
    if isinstance(e, FreeModuleElement) and e.rank != S.rank:
        raise RankMismatchError(f"element of rank {e.rank} vs submodule of rank {S.rank}")
    return S.contains(e)


def express(e, S: Submodule) -> list | None:
    """Coefficients ``c`` with ``e = sum c_i * S.generators[i]``, or None.

    Uses a Gröbner basis that records how every basis element was built
    from the original generators.
    """
    e = S._coerce(e)
    basis, leads, reps = S._engine_result(track=True)
    eng = _Engine(S.ring, S.rank, S.order, True)
    m = len(S.generators)
    zero_rep = [dict() for _ in range(m)]
    rem, rep = eng.reduce(_to_vec(e), zero_rep, basis, leads, reps)
    if rem:
        return None
    # reduction tracked e + sum rep_i g_i down to zero
    field = S.ring.field
    return [Polynomial(S.ring, {x: field.normalize(-c) for x, c in r.items()}, _clean=True) for r in rep]


def ideal_power(I: Ideal, m: int) -> Ideal:
    """All m-fold products of generators of I; minimalized when I is monomial."""
    if m < 1:
        raise ValueError("power must be >= 1")
    gens = I.polys
    if gens and all(g.is_monomial() for g in gens):
        from .iclose import MonomialIdeal  # local import keeps module layering one-way at import time

        mono = MonomialIdeal.from_polynomials(I.ring, gens).power(m)
        return mono.to_ideal()
    products = []
    seen = set()
    for combo in itertools.combinations_with_replacement(range(len(gens)), m):
        p = I.ring.one()
        for i in combo:
            p = p * gens[i]
        p = p.monic()
        if p and p not in seen:
            seen.add(p)
            products.append(p)
    return Ideal(I.ring, products, I.order)


def quotient_dimension(S: Submodule) -> int | None:
    """dim_k of R^rank / S, or None if infinite."""
    ring = S.ring
    s = ring.nvars
    _, leads = S.groebner
    total = 0
    for pos in range(S.rank):
        lms = [e for p, e in leads if p == pos]
        bounds = []
        for i in range(s):
            pure = [e[i] for e in lms if all(e[j] == 0 for j in range(s) if j != i) and e[i] > 0]
            if not pure and not any(not any(e) for e in lms):
                return None
            bounds.append(min(pure) if pure else 0)
        if any(not any(e) for e in lms):
            continue
        for exp in itertools.product(*(range(b) for b in bounds)):
            if not any(_divides(lm, exp) for lm in lms):
                total += 1
    return total


def maximal_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, [ring.gen(v) for v in ring.base_vars])


def is_m_primary(I: Ideal) -> tuple:
    """Return ``(True, t)`` with t minimal such that m^t ⊆ I, or ``(False, None)``.

    m is the ideal generated by all base variables.
    """
    ring = I.ring
    gb, leads = I.groebner
    if len(gb) == 1 and not any(leads[0][1]):
        raise PreconditionError("I is the unit ideal")
    for g in I.polys:
        if g.constant_term():
            raise PreconditionError(f"I is not contained in m: generator {g} has a nonzero constant term")
    D = quotient_dimension(I)
    if D is None:
        return False, None
    for v in ring.base_vars:
        if not I.contains(ring.gen(v) ** D):
            return False, None
    for t in range(1, D + 1):
        if all(I.contains(ring.monomial(e)) for e in monomials_of_degree(ring.nvars, t)):
            return True, t
    raise AssertionError("unreachable: m^D must lie in an m-primary ideal")
