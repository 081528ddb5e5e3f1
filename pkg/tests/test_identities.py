import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mzstar.exact import h_star
from mzstar.identities import (
    c4_rhs,
    check_lemma21,
    check_lemma22,
    check_recurrence,
    product_form_variant,
    t1_rhs,
    verify_c4,
    verify_t1,
    verify_t1_variant,
)
from mzstar.index import InvalidIndex, TwoBlockIndex, delta_profile, two_block_grid

Z = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)]


def brute_c4(n, t):
    """Duality right-hand side by explicit enumeration of k_0 >= ... >= k_d."""
    deltas = delta_profile(t)
    total = Fraction(0)
    for ks in oracles.itertools.combinations_with_replacement(range(n, 0, -1), t.d + 1):
        v = oracles.binom_ratio(n, ks[0])
        for i, k in enumerate(ks):
            v *= Fraction((-1) ** (k * deltas[i]), k ** (2 * t.a[i] + 3 - deltas[i]))
        for i in range(1, t.d + 1):
            v *= oracles.sharp(ks[i - 1], ks[i], (1,) * max(t.c[i - 1] - 3, 0))
        total += v
    return (2 if t.trailing_one else -2) * total


def test_lemma21_examples():
    r = check_lemma21(2, 0, part=1)
    assert (r.lhs, r.rhs, r.passed) == (-1, -1, True)
    r = check_lemma21(2, part=3)
    assert (r.lhs, r.rhs, r.passed) == (0, 0, True)
    r = check_lemma21(1, 0, part=2)
    assert (r.lhs, r.rhs, r.passed) == (1, 1, True)


def test_lemma22_examples():
    r = check_lemma22(3, 1, part=1)
    assert r.lhs == r.rhs == Fraction(9, 4)
    r = check_lemma22(2, 1, c=0, part=2)
    assert r.lhs == r.rhs == Fraction(-1, 3)
    assert check_lemma22(1, 1, c=2, part=2).passed


def test_lemma_preconditions():
    with pytest.raises(ValueError):
        check_lemma21(3, 4)
    with pytest.raises(ValueError):
        check_lemma21(1, part=3)
    with pytest.raises(ValueError):
        check_lemma21(3, 0, part=4)
    with pytest.raises(ValueError):
        check_lemma22(3, 0)
    with pytest.raises(ValueError):
        check_lemma22(3, 1, c=-1, part=2)


def test_lemma_grid_small():
    for n in range(1, 15):
        for l in range(n + 1):
            assert check_lemma21(n, l, 1).passed and check_lemma21(n, l, 2).passed
            if l:
                assert check_lemma22(n, l, part=1).passed
                for c in range(4):
                    assert check_lemma22(n, l, c, part=2).passed


def test_t1_examples():
    assert t1_rhs(2, (), [Fraction(1, 2)]) == Fraction(64, 45)
    assert t1_rhs(1, (3,), Z[:2]) == Fraction(3, 2)
    x = Fraction(2, 7)
    for c in [(), (3,), (3, 1), (4, 5)]:
        assert t1_rhs(1, c, [x] * (len(c) + 1)) == (1 / (1 - x * x)) ** (len(c) + 1)


@pytest.mark.parametrize("c", [(3,), (3, 1), (4,), (3, 4)])
def test_verify_t1(c):
    for n in range(1, 21):
        assert verify_t1(n, c, Z[: len(c) + 1]).passed


@pytest.mark.parametrize("c", [(), (3,), (1,), (3, 1), (4, 5), (1, 1)])
@pytest.mark.parametrize("trailing", [False, True])
def test_variants(c, trailing):
    z = Z[: len(c) + 1]
    for forced in [None, *range(len(c) + 1)]:
        for n in range(1, 9):
            assert verify_t1_variant(n, c, z, trailing, forced).passed


def test_variant_oracle_is_independent():
    # trailing variant: one more c = 1 block with z = 0
    n, c, z = 5, (3,), Z[:2]
    assert product_form_variant(n, c, z, trailing_one=True) == oracles.gf_product(
        n, (3, 1), [*z, 0])


def test_t1_zero_z_matches_c4():
    for t in two_block_grid(2, 0, (1, 3, 4, 5), 20, convergent_only=False):
        zeros = [0] * (t.d + 1)
        for n in range(1, 7):
            assert t1_rhs(n, t.c, zeros, t.trailing_one) == c4_rhs(n, t)


def test_t1_rejects():
    with pytest.raises(InvalidIndex):
        t1_rhs(3, (2,), Z[:2])
    with pytest.raises(ValueError):
        t1_rhs(3, (3,), [Fraction(1, 2), Fraction(1)])
    with pytest.raises(ValueError):
        t1_rhs(3, (3,), Z[:2], forced_block=2)


@pytest.mark.parametrize("c", [(), (3,), (1,), (3, 1), (4, 3)])
def test_recurrence(c):
    for n in range(1, 16):
        assert check_recurrence(n, c, Z[: len(c) + 1]).passed


def test_c4_examples():
    assert c4_rhs(2, TwoBlockIndex((1,), ())) == Fraction(5, 4)
    assert c4_rhs(1, TwoBlockIndex((0, 0), (3,))) == 1
    assert c4_rhs(3, TwoBlockIndex((1,), (), True)) == Fraction(341, 216)


@pytest.mark.parametrize("t", [
    TwoBlockIndex((1, 2), (3,)),
    TwoBlockIndex((1, 1), (1,)),
    TwoBlockIndex((0, 0), (5,)),
    TwoBlockIndex((1, 0, 1), (4, 1), True),
])
def test_c4_against_enumeration(t):
    for n in range(1, 7):
        assert c4_rhs(n, t) == brute_c4(n, t)
    for n in range(1, 26):
        assert verify_c4(n, t).passed


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(0, 2), min_size=1, max_size=3),
    st.lists(st.sampled_from([1, 3, 4, 5]), max_size=2),
    st.booleans(),
    st.integers(1, 9),
)
def test_c4_property(a, c, trailing, n):
    a = (a + [0, 0, 0])[: len(c) + 1]
    t = TwoBlockIndex(tuple(a), tuple(c), trailing)
    assert c4_rhs(n, t) == h_star(n, t.flatten())


def test_report_json():
    r = verify_c4(3, TwoBlockIndex((1,), (), True))
    data = json.loads(json.dumps(r.to_json()))
    assert set(data) == {"identity", "params", "lhs", "rhs", "pass"}
    assert data["lhs"] == "341/216" and data["pass"] is True
