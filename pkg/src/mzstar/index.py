"""Signed indices and two-block index shapes.

A signed index is a tuple of non-zero integers; a negative entry ``-s``
stands for the barred (alternating) entry, contributing ``(-1)**k / k**s``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidIndex(ValueError):
    """Malformed or structurally invalid index."""


class ParseError(InvalidIndex):
    pass


class DivergentIndex(InvalidIndex):
    """The requested infinite sum does not converge."""


@dataclass(frozen=True, order=False)
class SignedIndex:
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e == 0 for e in entries):
            raise InvalidIndex(f"zero magnitude in index {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> SignedIndex:
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def depth(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return sum(abs(e) for e in self.entries)

    @property
    def magnitudes(self) -> tuple[int, ...]:
        return tuple(abs(e) for e in self.entries)

    @property
    def barred(self) -> tuple[bool, ...]:
        return tuple(e < 0 for e in self.entries)

    @property
    def is_alternating(self) -> bool:
        return any(e < 0 for e in self.entries)

    def is_convergent(self) -> bool:
        """Leading entry barred or of magnitude at least 2 (empty index converges)."""
        if not self.entries:
            return True
        return self.entries[0] < 0 or self.entries[0] >= 2

    def tail(self) -> SignedIndex:
        return SignedIndex(self.entries[1:])

    def sort_key(self):
        return (self.weight, self.depth, tuple((abs(e), e < 0) for e in self.entries))

    def render(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def to_json(self) -> list[int]:
        return list(self.entries)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> SignedIndex:
        return cls(tuple(data))

    def __str__(self) -> str:
        return f"({self.render()})"


_TERM = re.compile(r"^(-?)(\d+)(?:\^(\d+))?$")


def parse_index(text: str) -> SignedIndex:
    """Parse ``"2^3,-3,1"`` style text; ``s^m`` repeats ``s`` m times, ``-s`` is barred."""
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        return SignedIndex()
    entries: list[int] = []
    for token in stripped.split(","):
        m = _TERM.match(token)
        if m is None:
            raise ParseError(f"malformed index term {token!r}")
        minus, digits, rep = m.groups()
        magnitude = int(digits)
        if magnitude == 0:
            raise ParseError(f"zero magnitude in term {token!r}")
        if rep is not None:
            if minus:
                raise ParseError(f"repetition applied to barred entry in term {token!r}")
            entries.extend([magnitude] * int(rep))
        else:
            entries.append(-magnitude if minus else magnitude)
    return SignedIndex(tuple(entries))


def as_index(value) -> SignedIndex:
    if isinstance(value, SignedIndex):
        return value
    if isinstance(value, str):
        return parse_index(value)
    return SignedIndex(tuple(value))


@dataclass(frozen=True)
class TwoBlockIndex:
    """The shape ({2}^a0, c1, {2}^a1, ..., cd, {2}^ad [, 1]) with every c_i != 2."""

    a: tuple[int, ...]
    c: tuple[int, ...] = ()
    trailing_one: bool = False

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        c = tuple(int(x) for x in self.c)
        if len(a) != len(c) + 1:
            raise InvalidIndex(f"need len(a) == len(c) + 1, got a={a}, c={c}")
        if any(x < 0 for x in a):
            raise InvalidIndex(f"negative block length in {a}")
        for x in c:
            if x < 1 or x == 2:
                raise InvalidIndex(f"separator {x} not in N \\ {{2}}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)

    @property
    def d(self) -> int:
        return len(self.c)

    def flatten(self) -> SignedIndex:
        out: list[int] = [2] * self.a[0]
        for ci, ai in zip(self.c, self.a[1:]):
            out.append(ci)
            out.extend([2] * ai)
        if self.trailing_one:
            out.append(1)
        return SignedIndex(tuple(out))

    @property
    def weight(self) -> int:
        return self.flatten().weight

    def is_convergent(self) -> bool:
        return self.a[0] >= 1 or (self.d >= 1 and self.c[0] >= 3)

    def deltas(self) -> tuple[int, ...]:
        return delta_profile(self)

    def __str__(self) -> str:
        parts = [f"{{2}}^{self.a[0]}"]
        for ci, ai in zip(self.c, self.a[1:]):
            parts += [str(ci), f"{{2}}^{ai}"]
        if self.trailing_one:
            parts.append("1")
        return "(" + ",".join(parts) + ")"


def small_delta(c: int) -> int:
    if c == 0:
        return 2
    if c == 1:
        return 1
    if c >= 3:
        return 0
    raise InvalidIndex(f"small_delta undefined for c={c}")


def delta_profile(t: TwoBlockIndex) -> tuple[int, ...]:
    """delta_i = delta(c_i) + delta(c_{i+1}) with c_0 = 1 and c_{d+1} = 1 or 0."""
    cs = (1,) + t.c + ((1,) if t.trailing_one else (0,))
    return tuple(small_delta(cs[i]) + small_delta(cs[i + 1]) for i in range(t.d + 1))


def detect_two_block(s, trailing_one: bool | None = None) -> TwoBlockIndex:
    """Read an unbarred index as a two-block shape.

    By default the final entry is never absorbed as a trailing one; pass
    ``trailing_one=True`` to require and absorb a final 1.
    """
    s = as_index(s)
    if s.is_alternating:
        raise InvalidIndex(f"two-block shape needs an unbarred index, got {s}")
    entries = list(s.entries)
    if trailing_one:
        if not entries or entries[-1] != 1:
            raise InvalidIndex(f"index {s} does not end in 1")
        entries.pop()
    a = [0]
    c: list[int] = []
    for e in entries:
        if e == 2:
            a[-1] += 1
        else:
            c.append(e)
            a.append(0)
    return TwoBlockIndex(tuple(a), tuple(c), bool(trailing_one))


def compositions(parts: Sequence[int]) -> set[SignedIndex]:
    """All indices p_1 o p_2 o ... where each o is either ',' or '+'."""
    parts = [int(p) for p in parts]
    if not parts:
        raise InvalidIndex("compositions of an empty part list")
    if any(p < 1 for p in parts):
        raise InvalidIndex(f"parts must be positive, got {parts}")
    out = set()
    for glue in itertools.product((False, True), repeat=len(parts) - 1):
        acc = [parts[0]]
        for g, p in zip(glue, parts[1:]):
            if g:
                acc[-1] += p
            else:
                acc.append(p)
        out.add(SignedIndex(tuple(acc)))
    return out


def two_block_grid(
    d_max: int,
    a_max: int,
    c_values: Iterable[int],
    weight_max: int | None = None,
    convergent_only: bool = True,
    trailing: Iterable[bool] = (False, True),
) -> list[TwoBlockIndex]:
    """Enumerate two-block shapes in a deterministic order."""
    c_values = tuple(c_values)
    trailing = tuple(trailing)
    out = []
    for d in range(d_max + 1):
        for c in itertools.product(c_values, repeat=d):
            for a in itertools.product(range(a_max + 1), repeat=d + 1):
                for tr in trailing:
                    t = TwoBlockIndex(a, c, tr)
                    if convergent_only and not t.is_convergent():
                        continue
                    if weight_max is not None and t.weight > weight_max:
                        continue
                    out.append(t)
    return out
