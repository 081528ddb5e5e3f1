"""High-precision truncated evaluation of Euler sums, zeta values and the
generating functions of zeta star values, plus numeric cross-checks.

Arithmetic is MPFR (via gmpy2) at the requested precision plus 32 guard
bits; every sum runs over increasing k, so results are reproducible bit for
bit at fixed precision and cutoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import gmpy2
from gmpy2 import mpfr

from ._nested import chain_sum
from .expander import EulerCombination, build_chain, expand_chain
from .index import (
    DivergentIndex,
    InvalidIndex,
    SignedIndex,
    TwoBlockIndex,
    as_index,
    delta_profile,
)

GUARD_BITS = 32


def _ctx(precision: int):
    if precision < 53:
        raise ValueError(f"precision must be at least 53 bits, got {precision}")
    return gmpy2.context(gmpy2.get_context(), precision=precision + GUARD_BITS)


@dataclass(frozen=True)
class EvalResult:
    value: object  # mpfr
    terms_used: int
    tail_estimate: object  # mpfr, >= 0

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "terms_used": self.terms_used,
            "tail_estimate": float(self.tail_estimate),
        }


@dataclass(frozen=True)
class NumericReport:
    check: str
    params: dict = field(hash=False)
    lhs: object
    rhs: object
    tail: float
    tol: float

    @property
    def abs_diff(self) -> float:
        return float(abs(self.lhs - self.rhs))

    @property
    def rel_diff(self) -> float:
        scale = abs(self.rhs)
        return self.abs_diff / float(scale) if scale else self.abs_diff

    @property
    def passed(self) -> bool:
        return self.abs_diff <= max(self.tol, 10 * self.tail)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "tail": self.tail,
            "tol": self.tol,
            "pass": self.passed,
        }


def _require_convergent(s: SignedIndex) -> None:
    if not s.is_convergent():
        raise DivergentIndex(
            f"index {s} diverges: leading entry must be barred or at least 2"
        )


def _nested_numeric(s: SignedIndex, N: int, precision: int, strict: bool) -> EvalResult:
    _require_convergent(s)
    m = s.depth
    if N < max(m, 1):
        raise ValueError(f"need N >= depth(s) = {m}, got {N}")
    with _ctx(precision):
        if m == 0:
            return EvalResult(mpfr(1), N, mpfr(0))
        mags = [abs(e) for e in s]
        bars = [e < 0 for e in s]
        exps = sorted(set(mags))
        part = [mpfr(0)] * m + [mpfr(1)]
        order = range(m) if strict else range(m - 1, -1, -1)
        for k in range(1, N + 1):
            inv = 1 / mpfr(k)
            pw = {e: inv**e for e in exps}
            odd = k & 1
            for j in order:
                t = pw[mags[j]] * part[j + 1]
                if bars[j] and odd:
                    part[j] = part[j] - t
                else:
                    part[j] = part[j] + t
        inner = abs(part[1])
        if bars[0]:
            tail = inner * mpfr(N) ** (-mags[0])
        else:
            tail = inner * mpfr(N) ** (1 - mags[0])
        return EvalResult(+part[0], N, tail)


def euler_numeric(s, N: int = 10**6, precision: int = 128) -> EvalResult:
    """Strict Euler sum zeta(s) truncated at k_1 <= N."""
    return _nested_numeric(as_index(s), N, precision, strict=True)


def star_numeric(s, N: int = 10**6, precision: int = 128) -> EvalResult:
    """Non-strict Euler sum zeta*(s) truncated at k_1 <= N."""
    return _nested_numeric(as_index(s), N, precision, strict=False)


def combination_numeric(
    comb: EulerCombination, N: int = 10**6, precision: int = 128
) -> EvalResult:
    for key, _ in comb.items():
        _require_convergent(key)
    with _ctx(precision):
        value, tail = mpfr(0), mpfr(0)
        for key, coeff in comb.items():
            r = euler_numeric(key, N, precision)
            q = mpfr(coeff.numerator) / coeff.denominator
            value += q * r.value
            tail += abs(q) * r.tail_estimate
        return EvalResult(value, N, tail)


_BERNOULLI = ((2, 1, 6), (4, -1, 30), (6, 1, 42))


def zeta_single(s: int, precision: int = 128):
    """Riemann zeta(s), s >= 2, by Euler-Maclaurin through the B_6 term."""
    if s < 2:
        raise DivergentIndex(f"zeta({s}) diverges")
    wp = precision + GUARD_BITS
    # first omitted term is |B_8|/8! * s(s+1)...(s+6) * N^(-s-7)
    log2_coeff = math.log2((1 / 30) / math.factorial(8)) + 7 * math.log2(s + 6)
    N = max(10, math.ceil(2 ** ((wp + 8 + log2_coeff) / (s + 7))))
    with _ctx(precision):
        total = mpfr(0)
        for k in range(1, N):
            total += mpfr(k) ** (-s)
        n = mpfr(N)
        total += n ** (1 - s) / (s - 1) + n ** (-s) / 2
        for two_j, num, den in _BERNOULLI:
            rising = math.prod(range(s, s + two_j - 1))
            total += mpfr(num) / den / math.factorial(two_j) * rising * n ** (-s - two_j + 1)
        return gmpy2.mpfr(total, precision)


def verify_closed_forms(
    max_m: int = 4,
    N: int = 10**6,
    precision: int = 128,
    tol: float | None = None,
) -> list[NumericReport]:
    """Twos-blocks and single alternating values against their closed forms.

    Default ``tol`` is 1e-4 for non-alternating truncated sums and 1e-8
    when the truncated sum has an alternating leading entry.
    """
    reports = []
    with _ctx(precision):
        pi = gmpy2.const_pi()
        for m in range(1, max_m + 1):
            star = star_numeric((2,) * m, N, precision)
            alt = euler_numeric((-2 * m,), N, precision)
            reports.append(NumericReport(
                "star-twos", {"m": m, "N": N}, star.value, -2 * alt.value,
                float(star.tail_estimate + 2 * alt.tail_estimate),
                1e-4 if tol is None else tol,
            ))
            strict = euler_numeric((2,) * m, N, precision)
            reports.append(NumericReport(
                "strict-twos", {"m": m, "N": N}, strict.value,
                pi ** (2 * m) / math.factorial(2 * m + 1),
                float(strict.tail_estimate), 1e-4 if tol is None else tol,
            ))
        for s in range(2, 2 * max_m + 1):
            alt = euler_numeric((-s,), N, precision)
            reports.append(NumericReport(
                "alternating-single", {"s": s, "N": N}, alt.value,
                (mpfr(2) ** (1 - s) - 1) * zeta_single(s, precision),
                float(alt.tail_estimate), 1e-8 if tol is None else tol,
            ))
    return reports


def verify_zagier(a: int, b: int, N: int = 10**6, tol: float = 1e-4, precision: int = 128) -> NumericReport:
    """zeta*({2}^a, 3, {2}^b) summed directly vs. its Euler-sum expansion."""
    t = TwoBlockIndex((a, b), (3,))
    direct = star_numeric(t.flatten(), N, precision)
    comb = combination_numeric(expand_chain(build_chain(t)), N, precision)
    return NumericReport(
        "zagier", {"a": a, "b": b, "N": N}, direct.value, comb.value,
        float(direct.tail_estimate + comb.tail_estimate), tol,
    )


def verify_expansion_numeric(
    t: TwoBlockIndex, N: int = 10**6, tol: float = 1e-4, precision: int = 128
) -> NumericReport:
    """Direct zeta* sum vs. expanded combination for any convergent shape."""
    direct = star_numeric(t.flatten(), N, precision)
    comb = combination_numeric(expand_chain(build_chain(t)), N, precision)
    params = {"a": list(t.a), "c": list(t.c), "trailing_one": t.trailing_one, "N": N}
    return NumericReport(
        "expansion", params, direct.value, comb.value,
        float(direct.tail_estimate + comb.tail_estimate), tol,
    )


# -- generating functions -------------------------------------------------


def _gf_product_numeric(N: int, c: Sequence[int], z2: Sequence):
    """F_N(c; z) from the product form, streaming running products."""
    d = len(c)
    prod_ = [mpfr(1)] * (d + 1)

    def row(k):
        k2 = mpfr(k * k)
        prev = list(prod_)
        for j in range(d + 1):
            prod_[j] = prod_[j] * k2 / (k2 - z2[j])
        return [prod_[j] / prev[j - 1] / mpfr(k) ** c[j - 1] for j in range(1, d + 1)]

    if d == 0:
        for k in range(1, N + 1):
            row(k)
        return prod_[0]
    total, _ = chain_sum(row, [False] * (d - 1), N, mpfr(0))
    return prod_[0] * total


@dataclass(frozen=True)
class GFShape:
    """Which generating function a check compares, in product-form terms."""

    c: tuple[int, ...]
    trailing_one: bool = False
    forced_block: int | None = None
    divide_z0: bool = False


def _gf_lhs(shape: GFShape, z: Sequence[float], N: int):
    c = shape.c
    z2 = [mpfr(x) ** 2 for x in z]
    if shape.trailing_one:
        c, z2 = c + (1,), z2 + [mpfr(0)]
    value = _gf_product_numeric(N, c, z2)
    if shape.forced_block is not None:
        zeroed = list(z2)
        zeroed[shape.forced_block] = mpfr(0)
        value -= _gf_product_numeric(N, c, zeroed)
    if shape.divide_z0:
        value /= z2[0]
    return value


def _gf_lhs_tail(shape: GFShape, z: Sequence[float], N: int) -> float:
    """(1/(N-1)) prod pi q/sin(pi q) H*_N(ref) plus the star tail of ref.

    ref is the flattened shape with every a_i = 0 except a_m = 1 for a
    forced block, so it has the size of the generating function's leading
    coefficient.
    """
    d = len(shape.c)
    a = [0] * (d + 1)
    if shape.forced_block is not None:
        a[shape.forced_block] = 1
    ref = TwoBlockIndex(tuple(a), shape.c, shape.trailing_one).flatten()
    factor = 1.0
    for q in z:
        q = abs(float(q))
        factor *= math.pi * q / math.sin(math.pi * q) if q else 1.0
    if ref.depth == 0:
        return factor / (N - 1)
    if not ref.is_convergent():
        raise DivergentIndex(f"generating function of shape {shape} diverges")
    r = star_numeric(ref, N, 53)
    return factor * (float(r.value) / (N - 1) + float(r.tail_estimate))


def _alt(k, flag):
    return -1 if flag and k & 1 else 1


def _rhs_general(shape: GFShape, z: Sequence[float], N: int):
    """-+ sum prod (-1)^(k delta) k^(delta-1)/(k^2 - z^2) S#(...) [* z_m^2/k_m^2]."""
    c = shape.c
    d = len(c)
    deltas = delta_profile(TwoBlockIndex((0,) * (d + 1), c, shape.trailing_one))
    z2 = [mpfr(x) ** 2 for x in z]
    layout = [("k", 0)]
    for i, ci in enumerate(c, start=1):
        layout.extend([("l", i)] * max(ci - 3, 0))
        layout.append(("k", i))

    def row(k):
        kk = mpfr(k)
        out = []
        for kind, i in layout:
            if kind == "l":
                out.append(1 / kk)
                continue
            v = _alt(k, deltas[i] % 2) * kk ** (deltas[i] - 1) / (kk * kk - z2[i])
            if i == shape.forced_block:
                v = v * z2[i] / (kk * kk)
            out.append(v)
        return out

    total, last = chain_sum(row, [True] * (len(layout) - 1), N, mpfr(0))
    sign = 2 if shape.trailing_one else -2
    if shape.divide_z0:
        total, last = total / z2[0], last / z2[0]
    return sign * total, sign * last, deltas[0] % 2 == 1


def _links_rhs(weights_at, L, N, scalar):
    total, last = chain_sum(weights_at, [True] * (L - 1), N, mpfr(0))
    return scalar * total, scalar * last


def _rhs_twos_threes(z, N):
    d = len(z) - 1
    z2 = [mpfr(x) ** 2 for x in z]
    if d == 0:
        total, last = chain_sum(lambda k: [_alt(k, 1) / (mpfr(k * k) - z2[0])], [], N, mpfr(0))
        return 1 - 2 * z2[0] * total, -2 * z2[0] * last, True

    def row(k):
        kk = mpfr(k)
        out = [_alt(k, 1) / (kk * kk - z2[0])]
        for i in range(1, d + 1):
            out.append(1 / (kk * (kk * kk - z2[i])))
        out[-1] = out[-1] * kk * kk
        return out

    total, last = _links_rhs(row, d + 1, N, -2)
    return total, last, True


def _rhs_twos_ones(z, N, trailing):
    d = len(z) - 1
    z2 = [mpfr(x) ** 2 for x in z]

    def row(k):
        kk = mpfr(k)
        out = [kk / (kk * kk - z2[i]) for i in range(d + 1)]
        out[0] = out[0] / (kk * kk)
        if not trailing:
            out[-1] = out[-1] * _alt(k, 1) * kk
        return out

    # leading 2^Delta(0, k_0) = 2
    total, last = _links_rhs(row, d + 1, N, 2 if trailing else -2)
    return total, last, not trailing and d == 0


def _rhs_two_three_two_one(z, N, trailing):
    L = len(z)
    z2 = [mpfr(x) ** 2 for x in z]

    def row(k):
        kk = mpfr(k)
        out = [_alt(k, 1) / (kk * kk - z2[i]) for i in range(L)]
        if not trailing:
            out[-1] = out[-1] * kk * kk
        return out

    total, last = _links_rhs(row, L, N, 2 if trailing else -2)
    return total, last, True


def gf_shape(theorem: str, nz: int, c=None, trailing_one=False, forced_block=None) -> GFShape:
    """Map a theorem name and number of z values to its generating-function shape."""
    if theorem == "twos-threes":
        return GFShape((3,) * (nz - 1))
    if theorem == "twos-ones":
        return GFShape((1,) * (nz - 1), forced_block=0, divide_z0=True)
    if theorem == "twos-ones-trailing":
        return GFShape((1,) * (nz - 1), trailing_one=True, forced_block=0, divide_z0=True)
    if theorem == "two-three-two-one":
        if nz < 3 or nz % 2 == 0:
            raise InvalidIndex("two-three-two-one needs 2d+1 z values, d >= 1")
        return GFShape((3, 1) * ((nz - 1) // 2))
    if theorem == "two-three-two-one-trailing":
        if nz < 2 or nz % 2:
            raise InvalidIndex("two-three-two-one-trailing needs 2d z values, d >= 1")
        return GFShape(((3, 1) * (nz // 2))[:-1], trailing_one=True)
    if theorem == "general":
        if c is None:
            raise ValueError("the general form needs a c-list")
        c = tuple(int(x) for x in c)
        if len(c) + 1 != nz:
            raise ValueError(f"need {len(c) + 1} z values, got {nz}")
        if any(x == 2 or x < 1 for x in c):
            raise InvalidIndex(f"separators must lie in N \\ {{2}}, got {c}")
        if forced_block is not None and not 0 <= forced_block <= len(c):
            raise ValueError(f"forced_block must lie in 0..{len(c)}")
        if forced_block != 0 and not (c and c[0] >= 3):
            raise DivergentIndex(
                "the series needs c_1 >= 3 (d >= 1) unless the leading block is forced"
            )
        return GFShape(c, trailing_one, forced_block)
    raise ValueError(f"unknown theorem {theorem!r}")


GF_THEOREMS = (
    "twos-threes",
    "twos-ones",
    "twos-ones-trailing",
    "two-three-two-one",
    "two-three-two-one-trailing",
    "general",
)


def verify_gf_numeric(
    theorem: str,
    z: Sequence[float],
    N: int = 10**5,
    tol: float = 1e-4,
    precision: int = 128,
    c: Sequence[int] | None = None,
    trailing_one: bool = False,
    forced_block: int | None = None,
) -> NumericReport:
    """Truncated product form of a generating function vs. its nested-series form."""
    z = [float(x) for x in z]
    if any(abs(x) >= 1 for x in z):
        raise ValueError(f"need |z_j| < 1, got {z}")
    if N < 2:
        raise ValueError("need N >= 2")
    shape = gf_shape(theorem, len(z), c, trailing_one, forced_block)
    with _ctx(precision):
        lhs = _gf_lhs(shape, z, N)
        if theorem == "twos-threes":
            rhs, last, alternating = _rhs_twos_threes(z, N)
        elif theorem in ("twos-ones", "twos-ones-trailing"):
            rhs, last, alternating = _rhs_twos_ones(z, N, theorem.endswith("trailing"))
        elif theorem.startswith("two-three-two-one"):
            rhs, last, alternating = _rhs_two_three_two_one(z, N, theorem.endswith("trailing"))
        else:
            rhs, last, alternating = _rhs_general(shape, z, N)
        rhs_tail = float(abs(last)) * (1 if alternating else N)
    tail = _gf_lhs_tail(shape, z, N) + rhs_tail
    params = {"theorem": theorem, "z": z, "N": N}
    if theorem == "general":
        params.update(c=list(shape.c), trailing_one=trailing_one, forced_block=forced_block)
    return NumericReport("gf:" + theorem, params, lhs, rhs, tail, tol)


def verify_sine_product(z0: float, N: int = 10**5, tol: float = 1e-4, precision: int = 128) -> NumericReport:
    """prod_{k<=N} (1 - z^2/k^2)^-1 against pi z / sin(pi z)."""
    if not 0 < abs(z0) < 1:
        raise ValueError(f"need 0 < |z| < 1, got {z0}")
    with _ctx(precision):
        x = mpfr(z0)
        lhs = _gf_product_numeric(N, (), [x * x])
        pz = gmpy2.const_pi() * x
        rhs = pz / gmpy2.sin(pz)
    tail = float(lhs) * z0 * z0 / (N - 1)
    return NumericReport("sine-product", {"z": z0, "N": N}, lhs, rhs, tail, tol)


__all__ = [
    "EvalResult",
    "NumericReport",
    "euler_numeric",
    "star_numeric",
    "combination_numeric",
    "zeta_single",
    "verify_closed_forms",
    "verify_zagier",
    "verify_expansion_numeric",
    "verify_gf_numeric",
    "verify_sine_product",
    "gf_shape",
    "GFShape",
    "GF_THEOREMS",
]
