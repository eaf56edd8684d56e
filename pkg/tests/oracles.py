"""Reference computations that share no code with reesalg.

Polynomials here are plain dicts {exponent tuple: Fraction}.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def _nullspace(rows, ncols):
    """Basis of the right nullspace of a rational matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fcol]
        basis.append(v)
    return basis


def rank(rows):
    if not rows:
        return 0
    return len(rows[0]) - len(_nullspace(rows, len(rows[0])))


# -- Newton polyhedron by brute-force facet candidates ---------------------


def np_inequalities(gens):
    """Valid inequalities w.x >= c (w >= 0) including every facet of NP(gens).

    Every facet contains a generator g_a and is spanned by s-1 independent
    directions taken from {g_i - g_a} and the unit vectors.
    """
    s = len(gens[0])
    units = [tuple(int(i == k) for i in range(s)) for k in range(s)]
    found = set()
    if s == 1:
        return [((1,), min(g[0] for g in gens))]
    for ga in gens:
        dirs = [tuple(b - a for a, b in zip(ga, g)) for g in gens if g != ga] + units
        for subset in itertools.combinations(dirs, s - 1):
            ns = _nullspace(list(subset), s)
            if len(ns) != 1:
                continue
            w = ns[0]
            if all(x <= 0 for x in w):
                w = [-x for x in w]
            if any(x < 0 for x in w):
                continue
            den = 1
            for x in w:
                den = den * x.denominator // _gcd(den, x.denominator)
            wi = tuple(int(x * den) for x in w)
            c = min(sum(a * b for a, b in zip(wi, g)) for g in gens)
            found.add((wi, c))
    return sorted(found)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def np_contains(v, ineqs):
    return all(sum(a * b for a, b in zip(w, v)) >= c for w, c in ineqs)


def closure_bruteforce(gens):
    """Minimal generators of the integral closure by scanning a bounding box."""
    ineqs = np_inequalities(gens)
    s = len(gens[0])
    top = [max(g[i] for g in gens) for i in range(s)]
    inside = [v for v in itertools.product(*(range(t + 1) for t in top)) if np_contains(v, ineqs)]
    minimal = [v for v in inside if not any(u != v and all(a <= b for a, b in zip(u, v)) for u in inside)]
    return sorted(minimal, reverse=True)


# -- ideal membership by degree-truncated linear algebra -------------------


def monomials(nvars, degree):
    if nvars == 1:
        return [(degree,)]
    out = []
    for a in range(degree, -1, -1):
        out.extend((a,) + rest for rest in monomials(nvars - 1, degree - a))
    return out


def homogeneous_member(f, gens, nvars):
    """f homogeneous of degree D; gens homogeneous.  f in (gens) iff f lies in the
    span of {m * g : deg m = D - deg g}."""
    if not f:
        return True
    D = sum(next(iter(f)))
    spanning = []
    for g in gens:
        dg = sum(next(iter(g)))
        if dg > D:
            continue
        for m in monomials(nvars, D - dg):
            spanning.append({tuple(a + b for a, b in zip(e, m)): c for e, c in g.items()})
    basis = monomials(nvars, D)
    if not spanning:
        return False
    rows = [[h.get(e, 0) for e in basis] for h in spanning]
    return rank(rows + [[f.get(e, 0) for e in basis]]) == rank(rows)


def poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def poly_add(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


# -- determinants -------------------------------------------------------


def det_leibniz(matrix, nvars):
    n = len(matrix)
    total = {}
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = {(0,) * nvars: Fraction((-1) ** inv)}
        for i in range(n):
            term = poly_mul(term, matrix[i][perm[i]])
            if not term:
                break
        total = poly_add(total, term)
    return total


def floor_half_member(a, b, m):
    """x^a y^b in (x^2, y^2)^m."""
    return a // 2 + b // 2 >= m
