"""Exact Fourier–Motzkin elimination over the rationals.

An inequality is a pair ``(coeffs, bound)`` meaning ``sum coeffs[i]*z[i] <= bound``
with integer entries (rows are scaled to primitive integer vectors).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def _primitive(coeffs: Sequence, bound) -> tuple:
    den = 1
    for v in list(coeffs) + [bound]:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    ints = [int(v * den) for v in coeffs]
    b = int(bound * den)
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints), b
    return tuple(v // g for v in ints), Fraction(b, g)


class System:
    """A set of inequalities with elimination histories (for Chernikov's rule)."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: dict = {}  # coeffs -> (bound, history)

    def add(self, coeffs, bound, history: frozenset):
        coeffs, bound = _primitive(coeffs, bound)
        prev = self.rows.get(coeffs)
        if prev is None or bound < prev[0] or (bound == prev[0] and len(history) < len(prev[1])):
            self.rows[coeffs] = (bound, history)

    def items(self):
        return [(c, b, h) for c, (b, h) in self.rows.items()]


def eliminate(inequalities: Iterable, nvars: int, variables: Sequence[int]) -> list:
    """Project the polyhedron onto the coordinates not in ``variables``.

    Returns inequalities (still indexed over all ``nvars`` coordinates, with
    zero coefficients on eliminated ones).  An infeasible system produces a
    row ``0 <= b`` with ``b < 0``.
    """
    system = System(nvars)
    for idx, (coeffs, bound) in enumerate(inequalities):
        system.add(coeffs, bound, frozenset([idx]))
    remaining = list(variables)
    eliminated = 0
    while remaining:
        # pick the variable producing the fewest new rows
        def cost(v):
            pos = sum(1 for c, _, _ in system.items() if c[v] > 0)
            neg = sum(1 for c, _, _ in system.items() if c[v] < 0)
            return pos * neg - pos - neg

        var = min(remaining, key=lambda v: (cost(v), v))
        remaining.remove(var)
        eliminated += 1
        pos, neg, zero = [], [], []
        for c, b, h in system.items():
            (pos if c[var] > 0 else neg if c[var] < 0 else zero).append((c, b, h))
        nxt = System(nvars)
        for c, b, h in zero:
            nxt.add(c, b, h)
        for cp, bp, hp in pos:
            for cn, bn, hn in neg:
                hist = hp | hn
                # Chernikov: a combination depending on too many originals is redundant
                if len(hist) > eliminated + 1:
                    continue
                a, n = cp[var], -cn[var]
                coeffs = [n * x + a * y for x, y in zip(cp, cn)]
                coeffs[var] = 0
                nxt.add(coeffs, n * bp + a * bn, hist)
        system = nxt
    return [(c, b) for c, b, _ in system.items()]


def is_feasible(inequalities: Iterable, nvars: int) -> bool:
    rows = eliminate(inequalities, nvars, range(nvars))
    return all(b >= 0 for _, b in rows)
