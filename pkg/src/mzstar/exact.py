"""Exact rational evaluation of the finite sums: harmonic (star) sums, sharp
sums, binomial ratios and the product form of the finite generating function.

All values are :class:`fractions.Fraction`, normalized after every operation.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._nested import chain_sum, rows
from .index import InvalidIndex, SignedIndex, as_index, small_delta

__all__ = [
    "binom_ratio",
    "binom_ratios",
    "big_delta",
    "small_delta",
    "h_strict",
    "h_star",
    "h_strict_table",
    "sharp_sum",
    "sharp_row",
    "gf_product_form",
    "to_fraction",
]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction, int or 'p/q' string")
    return Fraction(x)


@lru_cache(maxsize=256)
def binom_ratios(n: int) -> tuple[Fraction, ...]:
    """C(n,k)/C(n+k,k) for k = 0..n, built from the ratio (n-k+1)/(n+k)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    out = [Fraction(1)]
    for k in range(1, n + 1):
        out.append(out[-1] * Fraction(n - k + 1, n + k))
    return tuple(out)


def binom_ratio(n: int, k: int) -> Fraction:
    if not 0 <= k <= n:
        raise ValueError(f"binom_ratio needs 0 <= k <= n, got n={n}, k={k}")
    return binom_ratios(n)[k]


def big_delta(a: int, b: int) -> int:
    return 0 if a == b else 1


def _term(entry: int, k: int) -> Fraction:
    if entry > 0:
        return Fraction(1, k**entry)
    return Fraction(-1 if k % 2 else 1, k ** (-entry))


def h_strict(n: int, s) -> Fraction:
    """H_n(s) = sum over n >= k_1 > ... > k_m >= 1; zero when n < depth."""
    s = as_index(s)
    m = s.depth
    if m == 0:
        return Fraction(1)
    if n < m:
        return Fraction(0)
    # part[j] = H_k(s_j, ..., s_m); part[m] = 1
    part = [Fraction(0)] * m + [Fraction(1)]
    for k in range(1, n + 1):
        for j in range(m):
            part[j] = part[j] + _term(s[j], k) * part[j + 1]
    return part[0]


def h_star(n: int, s) -> Fraction:
    """H*_n(s) = sum over n >= k_1 >= ... >= k_m >= 1."""
    s = as_index(s)
    m = s.depth
    if m == 0:
        return Fraction(1)
    part = [Fraction(0)] * m + [Fraction(1)]
    for k in range(1, n + 1):
        for j in range(m - 1, -1, -1):
            part[j] = part[j] + _term(s[j], k) * part[j + 1]
    return part[0]


def h_strict_table(n: int, s) -> list[Fraction]:
    """[H_0(s), H_1(s), ..., H_n(s)] in one pass."""
    s = as_index(s)
    m = s.depth
    if m == 0:
        return [Fraction(1)] * (n + 1)
    part = [Fraction(0)] * m + [Fraction(1)]
    out = [Fraction(0)]
    for k in range(1, n + 1):
        for j in range(m):
            part[j] = part[j] + _term(s[j], k) * part[j + 1]
        out.append(part[0])
    return out


def sharp_row(m: int, r: Sequence[int], kmax: int) -> list[Fraction]:
    """[S#_{k,m}(r) for k = m..kmax]; r must be non-empty and positive."""
    r = tuple(r)
    if not r:
        return [Fraction(2 ** big_delta(k, m)) for k in range(m, kmax + 1)]
    span = range(m, kmax + 1)
    # inner[v] = sum over v >= l_{j+1} >= ... >= l_c >= m, starting from the end link
    inner = {v: Fraction(2 ** big_delta(v, m), v ** r[-1]) for v in span}
    for rj in reversed(r[:-1]):
        acc = Fraction(0)
        nxt = {}
        for v in span:
            nxt[v] = (inner[v] + 2 * acc) / v**rj
            acc += inner[v]
        inner = nxt
    out = []
    acc = Fraction(0)
    for k in span:
        out.append(inner[k] + 2 * acc)
        acc += inner[k]
    return out


def sharp_sum(k: int, m: int, r=()) -> Fraction:
    """Multiple sharp sum S#_{k,m}(r).

    Only ``r = {1}^c`` occurs in the duality formulas; other ``r`` are
    supported but experimental.
    """
    r = tuple(as_index(r).entries) if not isinstance(r, tuple) else r
    if any(x < 1 for x in r):
        raise InvalidIndex(f"sharp sums take positive unbarred entries, got {r}")
    if not r or k < m:
        return Fraction(2 ** big_delta(k, m))
    return sharp_row(m, r, k)[-1]


def _check_z(z: Sequence) -> list[Fraction]:
    zs = [to_fraction(x) for x in z]
    for x in zs:
        if abs(x) >= 1:
            raise ValueError(f"need |z| < 1, got {x}")
    return zs


def gf_product_form(n: int, c: Sequence[int], z: Sequence) -> Fraction:
    """F_n(c_1..c_d; z_0..z_d) from its product representation.

    Sum over n >= k_1 >= ... >= k_d >= 1 of
    prod_{k=k_1}^{n} (1 - z_0^2/k^2)^-1 * k_1^-c_1 * prod_{k=k_2}^{k_1} (1 - z_1^2/k^2)^-1 ...
    """
    c = tuple(int(x) for x in c)
    zs = _check_z(z)
    if len(zs) != len(c) + 1:
        raise ValueError(f"need {len(c) + 1} z values, got {len(zs)}")
    if any(x == 2 or x < 1 for x in c):
        raise InvalidIndex(f"separators must lie in N \\ {{2}}, got {c}")
    d = len(c)
    # prefix[j][k] = prod_{i=1}^{k} (1 - z_j^2/i^2)^-1
    prefix = []
    for zj in zs:
        row = [Fraction(1)]
        z2 = zj * zj
        for i in range(1, n + 1):
            row.append(row[-1] * Fraction(i * i) / (i * i - z2))
        prefix.append(row)
    if d == 0:
        return prefix[0][n]
    weights = [
        (lambda k, j=j: Fraction(1, k ** c[j - 1]) * prefix[j][k] / prefix[j - 1][k - 1])
        for j in range(1, d + 1)
    ]
    total, _ = chain_sum(rows(weights), [False] * (d - 1), n, Fraction(0))
    return prefix[0][n] * total
