"""Expansion of multiple zeta star values of two-block shape into rational
linear combinations of alternating Euler sums.

A :class:`ChainSum` is the non-strict nested sum

    scalar * sum_{v_0 >= ... >= v_L >= 1} prod_j sgn_j^{v_j} / v_j^{e_j} * prod links

with each link either doubling on strict descent (``COND2``) or neutral
(``PLAIN``). Resolving every ``>=`` into ``>`` or ``=`` turns it into strict
Euler sums.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._nested import chain_sum, rows
from .exact import h_strict, to_fraction
from .index import (
    DivergentIndex,
    InvalidIndex,
    SignedIndex,
    TwoBlockIndex,
    as_index,
    compositions,
    delta_profile,
)


class Link(enum.Enum):
    COND2 = "COND2"
    PLAIN = "PLAIN"


@dataclass(frozen=True)
class ChainSum:
    scalar: Fraction
    vars: tuple[tuple[int, int], ...]
    links: tuple[Link, ...]

    def __post_init__(self):
        if len(self.links) != max(len(self.vars) - 1, 0):
            raise ValueError("need len(links) == len(vars) - 1")
        for e, p in self.vars:
            if e < 1 or p not in (0, 1):
                raise ValueError(f"bad chain variable ({e}, {p})")
        object.__setattr__(self, "scalar", to_fraction(self.scalar))


class EulerCombination:
    """Finite map SignedIndex -> Fraction with zero coefficients dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[SignedIndex, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = as_index(key)
            acc[key] = acc.get(key, Fraction(0)) + to_fraction(coeff)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @property
    def terms(self) -> dict[SignedIndex, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[SignedIndex, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EulerCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: EulerCombination) -> EulerCombination:
        return EulerCombination(list(self._terms.items()) + list(other._terms.items()))

    def __rmul__(self, scalar) -> EulerCombination:
        s = to_fraction(scalar)
        return EulerCombination({k: s * v for k, v in self._terms.items()})

    def __repr__(self) -> str:
        return f"EulerCombination({self.render()})"

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (key, coeff) in enumerate(self.items()):
            sign = "-" if coeff < 0 else ("+" if i else "")
            parts.append(f"{sign}{abs(coeff)}·Z({key.render()})")
        return " ".join(parts)

    def to_json(self, meta: dict | None = None) -> dict:
        return {
            "terms": [{"index": k.to_json(), "coeff": str(v)} for k, v in self.items()],
            "meta": dict(meta or {}),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> EulerCombination:
        return cls((tuple(t["index"]), Fraction(t["coeff"])) for t in data["terms"])


def combination_equal(x: EulerCombination, y: EulerCombination) -> bool:
    return EulerCombination(x.terms) == EulerCombination(y.terms)


def canonical_shape(t: TwoBlockIndex) -> TwoBlockIndex:
    """Rewrite (..., c_d = 1, {2}^0) as the trailing-one shape it equals.

    Without this the last block variable has exponent 0; the inner sum
    sum_{k <= K} (-1)^k 2^Delta(K, k) = -1 removes it exactly.
    """
    if not t.trailing_one and t.d >= 1 and t.c[-1] == 1 and t.a[-1] == 0:
        return TwoBlockIndex(t.a[:-1], t.c[:-1], True)
    return t


def build_chain(t) -> ChainSum:
    if not isinstance(t, TwoBlockIndex):
        raise TypeError("build_chain expects a TwoBlockIndex")
    if not t.is_convergent():
        raise DivergentIndex(
            f"zeta star of {t} diverges: needs a leading 2 (a_0 >= 1) or c_1 >= 3"
        )
    t = canonical_shape(t)
    deltas = delta_profile(t)
    vars_: list[tuple[int, int]] = []
    for i, delta in enumerate(deltas):
        if i >= 1 and t.c[i - 1] >= 4:
            vars_.extend([(1, 0)] * (t.c[i - 1] - 3))
        vars_.append((2 * t.a[i] + 3 - delta, delta % 2))
    scalar = Fraction(2 if t.trailing_one else -2)
    return ChainSum(scalar, tuple(vars_), (Link.COND2,) * (len(vars_) - 1))


def expand_chain(ch: ChainSum) -> EulerCombination:
    acc: dict[SignedIndex, Fraction] = {}
    if not ch.vars:
        return EulerCombination({SignedIndex(): ch.scalar})
    for choice in itertools.product((False, True), repeat=len(ch.links)):
        coeff = ch.scalar
        groups = [list(ch.vars[0])]
        for strict, link, var in zip(choice, ch.links, ch.vars[1:]):
            if strict:
                if link is Link.COND2:
                    coeff *= 2
                groups.append(list(var))
            else:
                groups[-1][0] += var[0]
                groups[-1][1] ^= var[1]
        key = SignedIndex(tuple(-e if p else e for e, p in groups))
        acc[key] = acc.get(key, Fraction(0)) + coeff
    return EulerCombination(acc)


def expand(t) -> EulerCombination:
    return expand_chain(build_chain(t))


def evaluate_chain(ch: ChainSum, n: int) -> Fraction:
    """Exact value of the chain with the outer variable cut at n."""
    def weight(e, p):
        def w(k):
            v = Fraction(1, k**e)
            return -v if p and k % 2 else v
        return w

    weights = [weight(e, p) for e, p in ch.vars]
    total, _ = chain_sum(rows(weights), [lk is Link.COND2 for lk in ch.links], n, Fraction(0))
    return ch.scalar * total


def evaluate_truncated(comb: EulerCombination, n: int) -> Fraction:
    """sum of coeff * H_n(key) over the combination."""
    return sum((coeff * h_strict(n, key) for key, coeff in comb.items()), Fraction(0))


def twos_three_reference(a: int, b: int) -> EulerCombination:
    """zeta*({2}^a, 3, {2}^b) = -2 zeta(-(2a+2b+3)) - 4 zeta(-(2a+2), 2b+1)."""
    return EulerCombination({
        (-(2 * a + 2 * b + 3),): -2,
        (-(2 * a + 2), 2 * b + 1): -4,
    })


def twos_one_reference(a: int, b: int) -> EulerCombination:
    """zeta*({2}^a, 1, {2}^b) = -2 zeta(-(2a+2b+1)) - 4 zeta(2a+1, -2b), a, b >= 1."""
    if a < 1 or b < 1:
        raise InvalidIndex(f"need a, b >= 1, got a={a}, b={b}")
    return EulerCombination({
        (-(2 * a + 2 * b + 1),): -2,
        (2 * a + 1, -2 * b): -4,
    })


def two_one_reference(a: Sequence[int]) -> EulerCombination:
    """sum over p in (2a_1+1) o ... o (2a_d+1) of 2^depth(p) zeta(p)."""
    a = [int(x) for x in a]
    if not a:
        raise InvalidIndex("two-one reference needs d >= 1")
    if a[0] < 1:
        raise InvalidIndex(f"a_1 = {a[0]} makes the star value diverge")
    return EulerCombination({p: 2**p.depth for p in compositions([2 * x + 1 for x in a])})


def two_one_shape(a: Sequence[int]) -> TwoBlockIndex:
    """({2}^a_1, 1, {2}^a_2, ..., 1, {2}^a_d, 1) as a trailing-one shape."""
    a = tuple(int(x) for x in a)
    return TwoBlockIndex(a, (1,) * (len(a) - 1), True)


__all__ = [
    "Link",
    "ChainSum",
    "EulerCombination",
    "combination_equal",
    "canonical_shape",
    "build_chain",
    "expand_chain",
    "expand",
    "evaluate_chain",
    "evaluate_truncated",
    "twos_three_reference",
    "twos_one_reference",
    "two_one_reference",
    "two_one_shape",
]
