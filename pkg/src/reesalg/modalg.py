"""Symmetric powers of M ⊆ F = R^r, graded products, maximal minors, and the
first-coordinate basis normalization.

Elements of ``S_n(F)`` are polynomials in the ring's ``T`` variables that are
homogeneous of ``T``-degree ``n``; inside a :class:`GradedPiece` they become
vectors over ``R`` indexed by the degree-n ``T``-monomials.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .arith import Polynomial, PolyRing, monomials_of_degree
from .errors import (
    GuardExceeded,
    NotFiniteLengthError,
    PreconditionError,
    ZeroQuotientError,
)
from .gb import FreeModuleElement, Ideal, Submodule, is_m_primary, quotient_dimension
from .linalg import determinant, inverse, rank, row_reduce, solve

DEFAULT_MAX_MINOR_SIZE = 6
DEFAULT_MAX_MINORS = 20000


@dataclass(frozen=True)
class Guards:
    """Instance-size limits; exceeded limits raise :class:`GuardExceeded`."""

    max_minor_size: int = DEFAULT_MAX_MINOR_SIZE
    max_minors: int = DEFAULT_MAX_MINORS
    max_generators: int = 5000
    max_products: int = 5000
    max_points: int = 1_000_000  # lattice points scanned by newton_closure


DEFAULT_GUARDS = Guards()


@dataclass(frozen=True)
class LinearModule:
    """M ⊆ F = R^r given by the r×d matrix whose column j holds the T-coefficients of L_j."""

    ring: PolyRing
    matrix: tuple
    labels: tuple = ()

    def __post_init__(self):
        if not self.ring.ext_vars:
            raise ValueError("a LinearModule needs a ring with T variables")
        rows = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        base = self.ring.base()
        if len(rows) != self.ring.r:
            raise ValueError(f"matrix has {len(rows)} rows but F has rank {self.ring.r}")
        d = len(rows[0]) if rows else 0
        if d < 1:
            raise ValueError("a module needs at least one generator")
        for row in rows:
            if len(row) != d:
                raise ValueError("ragged generator matrix")
            for entry in row:
                if entry.ring != base:
                    raise ValueError("matrix entries must lie in the base ring")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"L{j + 1}" for j in range(d)))

    @classmethod
    def from_forms(cls, ring: PolyRing, forms: Sequence[Polynomial], labels: Sequence[str] = ()) -> LinearModule:
        """Build from linear forms in T_1..T_r with coefficients in R."""
        base = ring.base()
        s, r = ring.s, ring.r
        rows = [[dict() for _ in forms] for _ in range(r)]
        for j, form in enumerate(forms):
            if form.ring != ring:
                form = form.to_ring(ring)
            for e, c in form.terms.items():
                ext = e[s:]
                if sum(ext) != 1:
                    raise PreconditionError(f"generator {form} is not linear in {', '.join(ring.ext_vars)}")
                i = ext.index(1)
                rows[i][j][e[:s]] = c
        matrix = tuple(tuple(Polynomial(base, d) for d in row) for row in rows)
        return cls(ring, matrix, tuple(labels))

    @property
    def r(self) -> int:
        return len(self.matrix)

    @property
    def d(self) -> int:
        return len(self.matrix[0])

    @property
    def base_ring(self) -> PolyRing:
        return self.ring.base()

    def column(self, j: int) -> list:
        return [row[j] for row in self.matrix]

    def forms(self) -> list:
        T = [self.ring.gen(t) for t in self.ring.ext_vars]
        out = []
        for j in range(self.d):
            f = self.ring.zero()
            for i in range(self.r):
                f = f + self.matrix[i][j].to_ring(self.ring) * T[i]
            out.append(f)
        return out


@dataclass(frozen=True)
class SymPowerBasis:
    """Degree-n monomials in T_1..T_r, lexicographically decreasing (T_1^n first)."""

    r: int
    n: int

    @property
    def monomials(self) -> list:
        return list(monomials_of_degree(self.r, self.n))

    def __len__(self):
        return comb(self.n + self.r - 1, self.r - 1)

    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.monomials)}


def to_coordinates(poly: Polynomial, basis: SymPowerBasis, base: PolyRing) -> FreeModuleElement:
    """Coordinates of a T-homogeneous polynomial of degree n in the basis of S_n(F)."""
    s = base.s
    idx = basis.index()
    comps = [dict() for _ in range(len(basis))]
    for e, c in poly.terms.items():
        ext = e[s:]
        if sum(ext) != basis.n:
            raise PreconditionError(f"{poly} is not homogeneous of T-degree {basis.n}")
        comps[idx[ext]][e[:s]] = c
    return FreeModuleElement(base, tuple(Polynomial(base, d, _clean=True) for d in comps))


def from_coordinates(elem: FreeModuleElement, basis: SymPowerBasis, ring: PolyRing) -> Polynomial:
    out = {}
    for comp, ext in zip(elem.components, basis.monomials):
        for e, c in comp.terms.items():
            out[e + tuple(ext)] = c
    return Polynomial(ring, out, _clean=True)


def _scalar_normal(elem: FreeModuleElement) -> FreeModuleElement:
    for comp in elem.components:
        if not comp.is_zero():
            inv = elem.ring.field.inv(comp.leading_coefficient())
            return elem * Polynomial(elem.ring, {(0,) * elem.ring.nvars: inv})
    return elem


@dataclass
class GradedPiece:
    """A submodule of S_n(F) in SymPowerBasis coordinates."""

    n: int
    basis: SymPowerBasis
    submodule: Submodule
    provenance: str
    module: LinearModule
    labels: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> tuple:
        return self.submodule.generators

    def forms(self) -> list:
        return [from_coordinates(g, self.basis, self.module.ring) for g in self.generators]

    def coordinates(self, poly: Polynomial) -> FreeModuleElement:
        if poly.ring != self.module.ring:
            poly = poly.to_ring(self.module.ring)
        return to_coordinates(poly, self.basis, self.module.base_ring)

    def contains(self, x) -> bool:
        if isinstance(x, Polynomial):
            if x.is_zero():
                return True
            x = self.coordinates(x)
        return self.submodule.contains(x)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def matrix(self) -> list:
        """Coefficient matrix: rows indexed by basis monomials, columns by generators."""
        gens = self.generators
        return [[g.components[i] for g in gens] for i in range(self.rank)]


def _piece(M: LinearModule, n: int, products, provenance: str) -> GradedPiece:
    basis = SymPowerBasis(M.r, n)
    base = M.base_ring
    gens, labels, seen = [], [], set()
    for label, poly in products:
        if poly.is_zero():
            continue
        elem = _scalar_normal(to_coordinates(poly, basis, base))
        if elem in seen:
            continue
        seen.add(elem)
        gens.append(elem)
        labels.append(label)
    return GradedPiece(n, basis, Submodule(base, len(basis), gens), provenance, M, labels)


def _l_products(M: LinearModule, a: int):
    forms = M.forms()
    for combo in itertools.combinations_with_replacement(range(M.d), a):
        p = M.ring.one()
        for j in combo:
            p = p * forms[j]
        yield "*".join(M.labels[j] for j in combo) or "1", p


def _product_guard(count: int, guards: Guards):
    if count > guards.max_products:
        raise GuardExceeded(f"too large: {count} products exceed the bound {guards.max_products}")


def sym_power(M: LinearModule, n: int, guards: Guards = DEFAULT_GUARDS) -> GradedPiece:
    """S_n(M): all n-fold products of the generators, as a submodule of S_n(F)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _product_guard(comb(M.d + n - 1, n), guards)
    return _piece(M, n, _l_products(M, n), "sym_power")


def graded_product(M: LinearModule, a: int, b: int, guards: Guards = DEFAULT_GUARDS) -> GradedPiece:
    """S_a(M)·S_b(F): products of a generators with every degree-b T-monomial."""
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a, b >= 0 and a + b >= 1")
    _product_guard(comb(M.d + a - 1, a) * comb(b + M.r - 1, M.r - 1), guards)
    t_monos = list(monomials_of_degree(M.r, b))
    s = M.ring.s

    def products():
        for label, p in _l_products(M, a):
            for ext in t_monos:
                Z = M.ring.monomial((0,) * s + ext)
                zlabel = str(Z)
                yield (f"{label}*{zlabel}" if label != "1" else zlabel) if zlabel != "1" else label, p * Z

    return _piece(M, a + b, products(), "graded_product")


def _dedupe_columns(rows: list) -> list:
    """Drop zero columns and columns that are scalar multiples of earlier ones."""
    if not rows:
        return rows
    base = rows[0][0].ring
    cols = []
    seen = set()
    for j in range(len(rows[0])):
        col = FreeModuleElement(base, tuple(row[j] for row in rows))
        if col.is_zero():
            continue
        key = _scalar_normal(col)
        if key in seen:
            continue
        seen.add(key)
        cols.append(col.components)
    return [[c[i] for c in cols] for i in range(len(rows))]


def maximal_minors(matrix: Sequence[Sequence[Polynomial]], guards: Guards = DEFAULT_GUARDS) -> Ideal:
    """Ideal of the r×r minors of an r×d matrix over R (zero ideal when d < r)."""
    rows = [list(r) for r in matrix]
    if not rows:
        raise ValueError("matrix has no rows")
    if not rows[0]:
        raise ValueError("matrix has no columns; pass the base ring via a LinearModule")
    base = rows[0][0].ring
    r = len(rows)
    if r > guards.max_minor_size:
        raise GuardExceeded(f"too large: minor size {r} exceeds the bound {guards.max_minor_size}")
    rows = _dedupe_columns(rows)
    d = len(rows[0]) if rows and rows[0] else 0
    if d < r:
        return Ideal(base, [])
    count = comb(d, r)
    if count > guards.max_minors:
        raise GuardExceeded(f"too large: {count} minors exceed the bound {guards.max_minors}")
    minors = []
    seen = set()
    for cols in itertools.combinations(range(d), r):
        sub = [[row[j] for j in cols] for row in rows]
        det = determinant(sub)
        if det.is_zero():
            continue
        det = det.monic()
        if det not in seen:
            seen.add(det)
            minors.append(det)
    return Ideal(base, minors)


def module_minors(M: LinearModule, guards: Guards = DEFAULT_GUARDS) -> Ideal:
    """I(M)."""
    return maximal_minors(M.matrix, guards)


def minors_ideal_of_sym_power(M: LinearModule, n: int, guards: Guards = DEFAULT_GUARDS) -> Ideal:
    """I(S_n(M)): maximal minors of the coefficient matrix of S_n(M)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = comb(n + M.r - 1, M.r - 1)
    if size > guards.max_minor_size:
        raise GuardExceeded(f"too large: minor size {size} exceeds the bound {guards.max_minor_size}")
    piece = sym_power(M, n, guards)
    if not piece.generators:
        return Ideal(M.base_ring, [])
    return maximal_minors(piece.matrix(), guards)


@dataclass
class DetAdjReport:
    n: int
    minors: list
    checks: list  # (generator g, basis monomial Z as a T-polynomial, verdict)
    note: str | None = None

    @property
    def passed(self) -> bool:
        return all(v for _, _, v in self.checks)


def check_detadj(M: LinearModule, n: int, guards: Guards = DEFAULT_GUARDS) -> DetAdjReport:
    """Check g·Z ∈ S_n(M) for every generator g of I(S_n(M)) and basis monomial Z."""
    ideal = minors_ideal_of_sym_power(M, n, guards)
    piece = sym_power(M, n, guards)
    s = M.ring.s
    checks = []
    for g in ideal.polys:
        for i, ext in enumerate(piece.basis.monomials):
            elem = FreeModuleElement.unit(M.base_ring, piece.rank, i, g)
            Z = M.ring.monomial((0,) * s + ext)
            checks.append((g, Z, piece.contains(elem)))
    note = None
    if piece.submodule.generators and len(piece.submodule.generators) < piece.rank:
        note = "fewer generators than the rank of S_n(F): minors ideal is zero by convention"
    return DetAdjReport(n, ideal.polys, checks, note)


@dataclass
class NormalizedBasis:
    """Output of :func:`normalize_basis`.

    ``change_of_basis`` has the new basis vectors T'_j as columns in the old
    coordinates; ``dual`` is its inverse (rows = coordinate functionals).
    """

    survivor: int
    change_of_basis: list
    dual: list
    transformed: LinearModule
    enlarged: LinearModule
    enlarged_transformed: LinearModule
    first_row_in_m: bool
    quotient_length: int | None
    unit_determinant: bool

    @property
    def verified(self) -> bool:
        return self.first_row_in_m and self.quotient_length == 1 and self.unit_determinant


def _transform(M: LinearModule, P: list, labels=()) -> LinearModule:
    base = M.base_ring
    rows = []
    for i in range(M.r):
        row = []
        for j in range(M.d):
            acc = base.zero()
            for k in range(M.r):
                if P[i][k]:
                    acc = acc + M.matrix[k][j].scale(P[i][k])
            row.append(acc)
        rows.append(tuple(row))
    return LinearModule(M.ring, tuple(rows), tuple(labels) or M.labels)


def normalize_basis(M: LinearModule, guards: Guards = DEFAULT_GUARDS) -> NormalizedBasis:
    """Pick a basis of F in which every generator's first coordinate lies in m.

    M is first enlarged to M'' = M + mF + (all but one residue direction) so that
    F/M'' is one-dimensional; the coordinate functional of the new first basis
    vector vanishes on M'' and hence on M modulo m.
    """
    if M.d < M.r:
        raise NotFiniteLengthError("F/M does not have finite length: fewer generators than rank")
    I = module_minors(M, guards)
    try:
        primary, _ = is_m_primary(I)
    except PreconditionError as exc:
        raise ZeroQuotientError(f"F/M is zero at m (M = F): {exc}") from None
    if not primary:
        raise NotFiniteLengthError("F/M does not have finite length: I(M) is not m-primary")

    field = M.ring.field
    base = M.base_ring
    r = M.r
    const_cols = [[M.matrix[i][j].constant_term() for i in range(r)] for j in range(M.d)]
    span = [c for c in const_cols if any(c)]
    chosen = []
    for i in range(r):
        e = [1 if k == i else 0 for k in range(r)]
        if rank(span + [e], field) > rank(span, field):
            chosen.append(i)
            span = span + [e]
    if not chosen:
        raise ZeroQuotientError("F/M is zero at m: constant parts already span F")
    survivor = chosen[0]
    nonzero = [c for c in const_cols if any(c)]
    u_basis = row_reduce(nonzero, field)[0] if nonzero else []
    # w vanishes on the residues of M and on the discarded directions, w(e_survivor) = 1
    vectors = list(u_basis) + [[1 if k == j else 0 for k in range(r)] for j in chosen[1:]]
    vectors.append([1 if k == survivor else 0 for k in range(r)])
    rhs = [0] * (len(vectors) - 1) + [1]
    w = solve(vectors, rhs, field)
    P = [w] + [[1 if k == j else 0 for k in range(r)] for j in range(r) if j != survivor]
    B = inverse(P, field)

    transformed = _transform(M, P)
    first_row_in_m = all(not entry.constant_term() for entry in transformed.matrix[0])

    gens = [tuple(M.column(j)) for j in range(M.d)]
    for i in range(r):
        for v in base.base_vars:
            col = [base.zero()] * r
            col[i] = base.gen(v)
            gens.append(tuple(col))
    for j in chosen[1:]:
        col = [base.zero()] * r
        col[j] = base.one()
        gens.append(tuple(col))
    enlarged = LinearModule(M.ring, tuple(tuple(g[i] for g in gens) for i in range(r)))
    enlarged_transformed = _transform(enlarged, P)
    length = quotient_dimension(Submodule(base, r, [FreeModuleElement(base, g) for g in gens]))

    det_p = determinant([[base.constant(c) for c in row] for row in P])
    unit_det = det_p.is_constant() and not det_p.is_zero()
    return NormalizedBasis(
        survivor=survivor,
        change_of_basis=B,
        dual=P,
        transformed=transformed,
        enlarged=enlarged,
        enlarged_transformed=enlarged_transformed,
        first_row_in_m=first_row_in_m,
        quotient_length=length,
        unit_determinant=unit_det,
    )


@dataclass
class T1Report:
    n: int
    k: int
    coefficients: list
    verdicts: list

    @property
    def passed(self) -> bool:
        return all(self.verdicts)


def in_power_of_m(p: Polynomial, j: int) -> bool:
    """Membership in m^j: every term has total degree >= j (m^j is monomial)."""
    return p.is_zero() or j <= 0 or p.min_degree() >= j


def t1_coefficient_check(M: LinearModule, n: int, k: int, guards: Guards = DEFAULT_GUARDS) -> T1Report:
    """T_1^n-coefficients of the generators of S_{n-k}(M)S_k(F) lie in m^{n-k}."""
    if k < 0 or n < max(k, 1):
        raise PreconditionError("need n >= k >= 0 and n >= 1")
    if not all(in_power_of_m(entry, 1) for entry in M.matrix[0]):
        raise PreconditionError("module is not normalized: a T_1-coefficient is a unit")
    piece = graded_product(M, n - k, k, guards)
    coeffs = [g.components[0] for g in piece.generators]
    return T1Report(n, k, coeffs, [in_power_of_m(c, n - k) for c in coeffs])
