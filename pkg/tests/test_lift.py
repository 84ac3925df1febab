import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finegrained.brute import count_ov, count_xor
from finegrained.errors import ArgumentError
from finegrained.factored import count_factored
from finegrained.instances import OvInstance, SumInstance, XorInstance
from finegrained.lift import count_sum_blockwise, factor_ov, factor_sum_blockwise, factor_xor
from oracles import naive_ov, naive_xor


def test_split_example():
    inst = factor_ov(OvInstance([[[1, 0, 1, 0]], [[0, 1, 0, 1]]]), 2, 2)
    assert inst.lists[0][0].to_strings() == [["10"], ["10"]]


def test_dimension_must_factor():
    with pytest.raises(ArgumentError):
        factor_xor(XorInstance([[[1, 0, 1]], [[0, 1, 0]]]), 2, 2)


def test_blockwise_sum_examples():
    one = SumInstance([[1], [-1]])
    inst = factor_sum_blockwise(one, 2, 1)
    assert [fv.to_strings() for lst in inst.lists for fv in lst] == [[["01"]], [["11"]]]
    assert count_factored(inst) == 1
    assert count_factored(factor_sum_blockwise(SumInstance([[2, -2], [-2, 2]]), 3, 1)) == 2
    with pytest.raises(ArgumentError):
        factor_sum_blockwise(SumInstance([[4], [-4]]), 3, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_every_factorization_preserves_counts(k, d, seed):
    rng = np.random.default_rng(seed)
    lists = [[tuple(int(x) for x in rng.random(d) < 0.4) for _ in range(rng.integers(1, 5))] for _ in range(k)]
    expected_ov, expected_xor = naive_ov(lists, d), naive_xor(lists, d)
    for b in range(1, d + 1):
        if d % b:
            continue
        g = d // b
        fo = factor_ov(OvInstance(lists, d), b, g)
        assert all(len(s) == 1 for lst in fo.lists for fv in lst for s in fv.sets)
        assert count_factored(fo) == expected_ov == count_ov(OvInstance(lists, d))
        assert count_factored(factor_xor(XorInstance(lists, d), b, g)) == expected_xor == count_xor(XorInstance(lists, d))


def blockwise_by_strings(lists, b, g):
    """Slice two's-complement strings with Python formatting, then sum blocks."""
    width = b * g
    total = 0
    for tup in itertools.product(*lists):
        words = [format(x & ((1 << width) - 1), f"0{width}b") for x in tup]
        ok = True
        for j in range(g):
            blocks = [w[j * b:(j + 1) * b] for w in words]
            vals = [int(s, 2) - (1 << b) * (s[0] == "1") for s in blocks]
            ok &= sum(vals) == 0
        total += ok
    return total


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(2, 3), st.integers(0, 2**32 - 1))
def test_blockwise_counts(b, g, k, seed):
    rng = np.random.default_rng(seed)
    width = b * g
    lists = [rng.integers(-(1 << (width - 1)), 1 << (width - 1), size=int(rng.integers(1, 4))).tolist() for _ in range(k)]
    inst = SumInstance(lists)
    expected = blockwise_by_strings(lists, b, g)
    assert count_sum_blockwise(inst, b, g) == expected
    assert count_factored(factor_sum_blockwise(inst, b, g)) == expected
