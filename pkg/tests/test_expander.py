import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mzstar.expander import (
    ChainSum,
    EulerCombination,
    Link,
    build_chain,
    canonical_shape,
    combination_equal,
    evaluate_chain,
    evaluate_truncated,
    expand,
    expand_chain,
    two_one_reference,
    two_one_shape,
    twos_one_reference,
    twos_three_reference,
)
from mzstar.index import DivergentIndex, InvalidIndex, SignedIndex, TwoBlockIndex, two_block_grid

GRID = two_block_grid(2, 2, (1, 3, 4, 5), 14)


def brute_chain(ch, n):
    """Chain value with v_0 <= n by enumerating all weakly decreasing tuples."""
    total = Fraction(0)
    for vs in oracles.itertools.combinations_with_replacement(range(n, 0, -1), len(ch.vars)):
        v = ch.scalar
        for (e, p), k in zip(ch.vars, vs):
            v *= Fraction((-1) ** (k * p), k**e)
        for link, x, y in zip(ch.links, vs, vs[1:]):
            if link is Link.COND2 and x > y:
                v *= 2
        total += v
    return total


def test_build_chain_examples():
    for a, b in [(0, 0), (1, 2), (3, 1)]:
        ch = build_chain(TwoBlockIndex((a, b), (3,)))
        assert ch.vars == ((2 * a + 2, 1), (2 * b + 1, 0))
        assert ch.links == (Link.COND2,) and ch.scalar == -2
    ch = build_chain(TwoBlockIndex((1,), ()))
    assert ch.vars == ((2, 1),) and ch.scalar == -2
    ch = build_chain(TwoBlockIndex((1,), (), True))
    assert ch.scalar == 2


def test_build_chain_sharp_variables():
    ch = build_chain(TwoBlockIndex((0, 1), (5,)))
    # two unit variables for the sharp sum with c - 3 = 2
    assert ch.vars[1:3] == ((1, 0), (1, 0))
    assert len(ch.links) == len(ch.vars) - 1


def test_build_chain_rejects_divergent():
    with pytest.raises(DivergentIndex):
        build_chain(TwoBlockIndex((0, 1), (1,)))
    with pytest.raises(TypeError):
        build_chain((2, 3))


def test_expand_examples():
    assert expand(TwoBlockIndex((0, 0), (3,))).render() == "-2·Z(-3) -4·Z(-2,1)"
    assert expand(TwoBlockIndex((1,), ())).render() == "-2·Z(-2)"
    assert expand_chain(ChainSum(Fraction(-2), ((7, 1),), ())) == EulerCombination({(-7,): -2})


@pytest.mark.parametrize("a,b", [(a, b) for a in range(5) for b in range(5)])
def test_twos_three_formal(a, b):
    assert expand(TwoBlockIndex((a, b), (3,))) == twos_three_reference(a, b)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 4) for b in range(1, 4)])
def test_twos_one_formal(a, b):
    assert expand(TwoBlockIndex((a, b), (1,))) == twos_one_reference(a, b)


def test_two_one_reference_examples():
    assert two_one_reference([1]) == EulerCombination({(3,): 2})
    assert two_one_reference([1, 1]) == EulerCombination({(3, 3): 4, (6,): 2})
    assert two_one_reference([2, 0]) == EulerCombination({(5, 1): 4, (6,): 2})
    with pytest.raises(InvalidIndex):
        two_one_reference([0, 1])


def test_two_one_formal():
    for a in oracles.itertools.product(range(3), repeat=3):
        for d in range(1, 4):
            if a[0] >= 1:
                assert expand(two_one_shape(a[:d])) == two_one_reference(a[:d])


def test_canonical_shape_removes_exponent_zero():
    t = TwoBlockIndex((1, 0), (1,))
    assert canonical_shape(t) == TwoBlockIndex((1,), (), True)
    assert expand(t) == EulerCombination({(3,): 2})
    assert canonical_shape(TwoBlockIndex((1, 1), (1,))) == TwoBlockIndex((1, 1), (1,))


@pytest.mark.parametrize("t", GRID[::7])
def test_chain_against_enumeration(t):
    ch = build_chain(t)
    for n in (1, 2, 4):
        assert evaluate_chain(ch, n) == brute_chain(ch, n)


@pytest.mark.parametrize("t", GRID[::3])
def test_truncation_equality(t):
    ch = build_chain(t)
    comb = expand_chain(ch)
    for n in (1, 2, 5, 13):
        assert evaluate_chain(ch, n) == evaluate_truncated(comb, n)


@pytest.mark.parametrize("t", GRID)
def test_expansion_keys_convergent_and_coefficients(t):
    comb = expand(t)
    assert all(key.is_convergent() for key, _ in comb.items())
    assert all(coeff != 0 for _, coeff in comb.items())
    if set(t.c) <= {1, 3}:
        for _, coeff in comb.items():
            mag = abs(coeff)
            assert mag.denominator == 1 and mag.numerator >= 2
            assert mag.numerator & (mag.numerator - 1) == 0


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 4), st.integers(0, 1)), min_size=1, max_size=4),
    st.data(),
)
def test_truncation_property(vars_, data):
    links = tuple(data.draw(st.sampled_from(list(Link))) for _ in vars_[1:])
    ch = ChainSum(Fraction(-2), tuple(vars_), links)
    comb = expand_chain(ch)
    n = data.draw(st.integers(1, 6))
    assert evaluate_chain(ch, n) == evaluate_truncated(comb, n) == brute_chain(ch, n)


def test_combination_normalization():
    x = EulerCombination({(3,): 2})
    assert combination_equal(x, x)
    assert combination_equal(EulerCombination(), EulerCombination())
    assert combination_equal(x, EulerCombination({(3,): 2, (5,): 0}))
    assert 2 * x == x + x
    assert len(x + (-1) * x) == 0


def test_canonical_order_and_render():
    comb = EulerCombination({(-2, 1): -4, (-3,): -2, (2, 2, 1): 1})
    keys = [k.entries for k, _ in comb.items()]
    assert keys == [(-3,), (-2, 1), (2, 2, 1)]
    assert comb.render() == "-2·Z(-3) -4·Z(-2,1) +1·Z(2,2,1)"


def test_combination_json_roundtrip():
    comb = expand(TwoBlockIndex((1, 2), (3,)))
    data = json.loads(json.dumps(comb.to_json({"source": "test"})))
    assert data["terms"][0] == {"index": [-9], "coeff": "-2"}
    assert data["meta"] == {"source": "test"}
    assert EulerCombination.from_json(data) == comb
    assert SignedIndex.from_json(data["terms"][1]["index"]) == SignedIndex((-4, 5))
