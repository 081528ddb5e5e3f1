"""Brute-force reference implementations by direct enumeration.

Deliberately naive: nested index tuples are enumerated with itertools and
products are formed term by term, sharing no code with the package.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, prod


def term(entry, k):
    v = Fraction(1, k ** abs(entry))
    return -v if entry < 0 and k % 2 else v


def h_strict(n, s):
    total = Fraction(0)
    for ks in itertools.combinations(range(n, 0, -1), len(s)):
        total += prod((term(e, k) for e, k in zip(s, ks)), start=Fraction(1))
    return total


def h_star(n, s):
    total = Fraction(0)
    for ks in itertools.combinations_with_replacement(range(n, 0, -1), len(s)):
        total += prod((term(e, k) for e, k in zip(s, ks)), start=Fraction(1))
    return total


def binom_ratio(n, k):
    return Fraction(comb(n, k), comb(n + k, k))


def sharp(k, m, r):
    if not r or k < m:
        return Fraction(2 ** (k != m))
    total = Fraction(0)
    for ls in itertools.combinations_with_replacement(range(k, m - 1, -1), len(r)):
        chain = (k, *ls, m)
        w = 2 ** sum(a != b for a, b in zip(chain, chain[1:]))
        total += Fraction(w) / prod(l**e for l, e in zip(ls, r))
    return total


def gf_product(n, c, z):
    """Product form of the finite generating function, term by term."""
    z = [Fraction(x) for x in z]

    def block(j, lo, hi):
        return prod((Fraction(i * i, i * i - z[j] ** 2) for i in range(lo, hi + 1)), start=Fraction(1))

    d = len(c)
    total = Fraction(0)
    for ks in itertools.combinations_with_replacement(range(n, 0, -1), d):
        bounds = (n, *ks, 1)
        v = prod((Fraction(1, k**cj) for k, cj in zip(ks, c)), start=Fraction(1))
        for j in range(d + 1):
            v *= block(j, bounds[j + 1], bounds[j])
        total += v
    return total


def gf_series_coeffs(n, c, a_max):
    """Taylor coefficients of the product form in w_j = z_j^2, up to degree a_max per variable.

    Returns {(a_0, ..., a_d): coefficient}. Each factor (1 - w/i^2)^-1 is
    expanded as a geometric series and multiplied out.
    """
    d = len(c)
    nv = d + 1

    def mul(p, q):
        out = {}
        for ea, ca in p.items():
            for eb, cb in q.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if max(e) <= a_max:
                    out[e] = out.get(e, 0) + ca * cb
        return out

    def geometric(j, i):
        return {tuple(t if v == j else 0 for v in range(nv)): Fraction(1, i ** (2 * t))
                for t in range(a_max + 1)}

    total = {}
    for ks in itertools.combinations_with_replacement(range(n, 0, -1), d):
        bounds = (n, *ks, 1)
        poly = {(0,) * nv: Fraction(prod((Fraction(1, k**cj) for k, cj in zip(ks, c)), start=Fraction(1)))}
        for j in range(nv):
            hi = bounds[j]
            lo = bounds[j + 1]
            for i in range(lo, hi + 1):
                poly = mul(poly, geometric(j, i))
        for e, v in poly.items():
            total[e] = total.get(e, 0) + v
    return total
