"""Non-strict nested sums with optional doubling on strict descents.

Shared by the exact (Fraction) and floating (gmpy2.mpfr) evaluators; the
arithmetic type is whatever the weights are.
"""
from __future__ import annotations

from typing import Callable, Sequence


def chain_sum(
    row: Callable[[int], Sequence],
    cond2: Sequence[bool],
    n: int,
    zero=0,
):
    """Return ``(total, last_outer)`` for

        sum_{n >= v_0 >= v_1 >= ... >= v_L >= 1} prod_j w_j(v_j) * prod_j link_j

    where ``row(k)`` gives ``[w_0(k), ..., w_L(k)]`` and ``link_j`` is 2 if
    ``cond2[j]`` and ``v_j > v_{j+1}``, else 1. ``row`` is called once per k
    in increasing order, so it may carry running state. ``last_outer`` is the
    contribution of ``v_0 = n``.
    """
    L = len(cond2) + 1
    cum = [zero] * L  # cum[j] = sum_{i < k} A_j(i)
    cur = [zero] * L
    for k in range(1, n + 1):
        w = row(k)
        a = w[L - 1]
        cur[L - 1] = a
        for j in range(L - 2, -1, -1):
            if cond2[j]:
                a = w[j] * (a + 2 * cum[j + 1])
            else:
                a = w[j] * (a + cum[j + 1])
            cur[j] = a
        for j in range(L):
            cum[j] = cum[j] + cur[j]
    last = cur[0] if n >= 1 else zero
    return cum[0], last


def rows(weights: Sequence[Callable[[int], object]]) -> Callable[[int], list]:
    """Adapt per-variable weight callables to a row callback."""
    return lambda k: [w(k) for w in weights]
