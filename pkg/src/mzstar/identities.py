"""Exact checks of the finite binomial identities and the finite generating
function identities for multiple harmonic star sums.

Every check returns a :class:`CheckReport` holding both sides as exact
rationals; a case passes only on exact equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._nested import chain_sum, rows
from .exact import (
    big_delta,
    binom_ratio,
    binom_ratios,
    gf_product_form,
    h_star,
    sharp_row,
    to_fraction,
)
from .index import InvalidIndex, TwoBlockIndex, delta_profile


@dataclass(frozen=True)
class CheckReport:
    identity: str
    params: dict = field(hash=False)
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "pass": self.passed,
        }


def _render(value):
    # formal checks compare Euler-sum combinations rather than rationals
    if hasattr(value, "to_json"):
        return value.to_json()["terms"]
    return str(value)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def check_lemma21(n: int, l: int = 0, part: int = 1) -> CheckReport:
    """Alternating and weighted sums of C(n,k)/C(n+k,k) from k = l+1 to n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    r = binom_ratios(n)
    if part in (1, 2):
        if not 0 <= l <= n:
            raise ValueError(f"need 0 <= l <= n, got n={n}, l={l}")
        if part == 1:
            lhs = 2 * sum((_sign(k) * r[k] for k in range(l + 1, n + 1)), Fraction(0))
            rhs = Fraction(-_sign(l), n) * (n - l) * r[l]
        else:
            lhs = 2 * sum((k * r[k] for k in range(l + 1, n + 1)), Fraction(0))
            rhs = (n - l) * r[l]
        return CheckReport("lemma21", {"n": n, "l": l, "part": part}, lhs, rhs)
    if part == 3:
        if n < 2:
            raise ValueError(f"part 3 needs n >= 2, got {n}")
        lhs = sum((_sign(k) * k * k * r[k] for k in range(1, n + 1)), Fraction(0))
        return CheckReport("lemma21", {"n": n, "part": 3}, lhs, Fraction(0))
    raise ValueError(f"part must be 1, 2 or 3, got {part}")


def check_lemma22(n: int, l: int, c: int = 0, part: int = 1) -> CheckReport:
    if not 1 <= l <= n:
        raise ValueError(f"need 1 <= l <= n, got n={n}, l={l}")
    r = binom_ratios(n)
    if part == 1:
        lhs = sum((k * r[k] * 2 ** big_delta(k, l) for k in range(l, n + 1)), Fraction(0))
        rhs = n * r[l]
        return CheckReport("lemma22", {"n": n, "l": l, "part": 1}, lhs, rhs)
    if part == 2:
        if c < 0:
            raise ValueError(f"c must be non-negative, got {c}")
        sharp = sharp_row(l, (1,) * c, n)
        lhs = sum((_sign(k) * r[k] * sharp[k - l] for k in range(l, n + 1)), Fraction(0))
        rhs = Fraction(_sign(l), n ** (c + 1)) * l * r[l]
        return CheckReport("lemma22", {"n": n, "l": l, "c": c, "part": 2}, lhs, rhs)
    raise ValueError(f"part must be 1 or 2, got {part}")


def _chain_layout(c: Sequence[int]):
    """Yield ('k', i) for block variables and ('l', i) for sharp-sum variables, in order."""
    layout = [("k", 0)]
    for i, ci in enumerate(c, start=1):
        layout.extend([("l", i)] * max(ci - 3, 0))
        layout.append(("k", i))
    return layout


def _validate_c(c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(int(x) for x in c)
    if any(x == 2 or x < 1 for x in c):
        raise InvalidIndex(f"separators must lie in N \\ {{2}}, got {c}")
    return c


def t1_rhs(
    n: int,
    c: Sequence[int],
    z: Sequence,
    trailing_one: bool = False,
    forced_block: int | None = None,
) -> Fraction:
    """Binomial-weighted nested sum equal to the finite generating function.

    ``trailing_one`` gives the (..., 1) variant with positive sign;
    ``forced_block=m`` restricts to a_m >= 1 (extra factor z_m^2 / k_m^2).
    """
    c = _validate_c(c)
    d = len(c)
    zs = [to_fraction(x) for x in z]
    if len(zs) != d + 1:
        raise ValueError(f"need {d + 1} z values, got {len(zs)}")
    if any(abs(x) >= 1 for x in zs):
        raise ValueError(f"need |z_j| < 1, got {zs}")
    if forced_block is not None and not 0 <= forced_block <= d:
        raise ValueError(f"forced_block must lie in 0..{d}, got {forced_block}")
    deltas = delta_profile(TwoBlockIndex((0,) * (d + 1), c, trailing_one))
    ratios = binom_ratios(n)

    def block_weight(i):
        delta, z2 = deltas[i], zs[i] * zs[i]

        def w(k):
            v = Fraction(k) ** (delta - 1) / (k * k - z2)
            if delta % 2 and k % 2:
                v = -v
            if i == forced_block:
                v = v * z2 / (k * k)
            if i == 0:
                v = v * ratios[k]
            return v

        return w

    def unit(k):
        return Fraction(1, k)

    weights = [block_weight(i) if kind == "k" else unit for kind, i in _chain_layout(c)]
    total, _ = chain_sum(rows(weights), [True] * (len(weights) - 1), n, Fraction(0))
    # leading sharp factor 2^Delta(0, k_0) = 2
    return (2 if trailing_one else -2) * total


def product_form_variant(
    n: int,
    c: Sequence[int],
    z: Sequence,
    trailing_one: bool = False,
    forced_block: int | None = None,
) -> Fraction:
    """Left-hand side of the finite generating-function identities via products."""
    c = _validate_c(c)
    zs = [to_fraction(x) for x in z]
    if trailing_one:
        c, zs = c + (1,), zs + [Fraction(0)]
    value = gf_product_form(n, c, zs)
    if forced_block is not None:
        zeroed = list(zs)
        zeroed[forced_block] = Fraction(0)
        value -= gf_product_form(n, c, zeroed)
    return value


def verify_t1(n: int, c: Sequence[int], z: Sequence) -> CheckReport:
    lhs = gf_product_form(n, c, z)
    rhs = t1_rhs(n, c, z)
    params = {"n": n, "c": list(c), "z": [str(to_fraction(x)) for x in z]}
    return CheckReport("theorem31", params, lhs, rhs)


def verify_t1_variant(
    n: int,
    c: Sequence[int],
    z: Sequence,
    trailing_one: bool = False,
    forced_block: int | None = None,
) -> CheckReport:
    """Trailing-one and a_m >= 1 variants against the product-form oracle."""
    lhs = product_form_variant(n, c, z, trailing_one, forced_block)
    rhs = t1_rhs(n, c, z, trailing_one, forced_block)
    params = {
        "n": n,
        "c": list(c),
        "z": [str(to_fraction(x)) for x in z],
        "trailing_one": trailing_one,
        "forced_block": forced_block,
    }
    return CheckReport("theorem31-variant", params, lhs, rhs)


def check_recurrence(n: int, c: Sequence[int], z: Sequence) -> CheckReport:
    """F_n = n^(2-c_1)/(n^2-z_0^2) F_n(shifted) + n^2/(n^2-z_0^2) F_(n-1)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    c = _validate_c(c)
    zs = [to_fraction(x) for x in z]
    lhs = gf_product_form(n, c, zs)
    denom = n * n - zs[0] * zs[0]
    rhs = Fraction(n * n) / denom * gf_product_form(n - 1, c, zs)
    if c:
        rhs += Fraction(n) ** (2 - c[0]) / denom * gf_product_form(n, c[1:], zs[1:])
    params = {"n": n, "c": list(c), "z": [str(x) for x in zs]}
    return CheckReport("recurrence", params, lhs, rhs)


def c4_rhs(n: int, t: TwoBlockIndex) -> Fraction:
    """Binomial-weighted nested-sum expression for H*_n(t)."""
    deltas = delta_profile(t)
    ratios = binom_ratios(n)

    def block_weight(i):
        delta = deltas[i]
        e = 2 * t.a[i] + 3 - delta

        def w(k):
            v = Fraction(1, k**e)
            if delta % 2 and k % 2:
                v = -v
            if i == 0:
                v = v * ratios[k]
            return v

        return w

    def unit(k):
        return Fraction(1, k)

    weights = [block_weight(i) if kind == "k" else unit for kind, i in _chain_layout(t.c)]
    total, _ = chain_sum(rows(weights), [True] * (len(weights) - 1), n, Fraction(0))
    return (2 if t.trailing_one else -2) * total


def verify_c4(n: int, t: TwoBlockIndex) -> CheckReport:
    lhs = h_star(n, t.flatten())
    rhs = c4_rhs(n, t)
    params = {"n": n, "a": list(t.a), "c": list(t.c), "trailing_one": t.trailing_one}
    return CheckReport("corollary36", params, lhs, rhs)


__all__ = [
    "CheckReport",
    "binom_ratio",
    "check_lemma21",
    "check_lemma22",
    "t1_rhs",
    "product_form_variant",
    "verify_t1",
    "verify_t1_variant",
    "check_recurrence",
    "c4_rhs",
    "verify_c4",
]
