import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finegrained import ground
from finegrained.brute import count_ov, count_sum, count_xor
from finegrained.errors import ArgumentError
from finegrained.factored import count_factored, sample_uniform_factored, signed

COUNTERS = {"OV": count_ov, "XOR": count_xor, "SUM": count_sum}


def test_output_lengths():
    rng = np.random.default_rng(0)
    xor_inst = sample_uniform_factored(2, 2, 2, 1, "XOR", rng)
    ov_inst = sample_uniform_factored(2, 2, 2, 1, "OV", rng)
    assert ground.ground_xor(xor_inst).dim == 4
    assert ground.ground_ov(ov_inst).dim == 6
    assert len(ground.ground_xor(xor_inst).lists) == 4


def test_ov_slot_gadget_is_exact():
    for w in (1, 2, 3):
        for a, c in itertools.product(range(1 << w), repeat=2):
            left = ground.ov_slot(a, w, True)
            right = ground.ov_slot(c, w, False)
            orthogonal = not any(x & y for x, y in zip(left, right))
            assert orthogonal == (a == c)


def test_sum_radix():
    assert ground.sum_bases(1, 2, 2, 2)[0] == 4


def test_sum_tags_telescope():
    rng = np.random.default_rng(3)
    g = 3
    inst = sample_uniform_factored(2, 4, g, 1, "SUM", rng)
    out = ground.ground_sum(inst)
    x = ground.sum_bases(1, 2, 4, g)[0]
    checked = 0
    for j, lst in enumerate(inst.lists):
        for label, fv in enumerate(lst):
            if not all(fv.sets):
                continue
            # first member of each set: the label parts cancel, only data digits remain
            picks = [out.lists[j * g + i][sum(len(v.sets[i]) for v in lst[:label])] for i in range(g)]
            data = sum(signed(fv.sets[i][0], 1) * x**i for i in range(g))
            assert sum(picks) == data
            checked += 1
    assert checked
    assert count_sum(out) == count_factored(inst)


def test_non_power_of_two_rejected():
    inst = sample_uniform_factored(2, 3, 2, 1, "XOR", np.random.default_rng(1))
    with pytest.raises(ArgumentError):
        ground.ground_xor(inst)
    assert count_xor(ground.ground_xor(ground.pad_to_power_of_two(inst))) == count_factored(inst)


def test_check_region_cancels_only_on_matching_labels():
    inst = sample_uniform_factored(2, 4, 2, 1, "XOR", np.random.default_rng(4))
    out = ground.ground_xor(inst)
    check = 2 * 1 * 2
    first, second = out.lists[0], out.lists[1]
    for u in first:
        for v in second:
            region = [a ^ c for a, c in zip(u[:check], v[:check])]
            assert any(region) == (u[:check] != v[:check])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["OV", "XOR", "SUM"]), st.sampled_from([1, 2, 4]), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_grounding_preserves_counts(kind, n, g, seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 4))
    inst = sample_uniform_factored(k, n, g, 1, kind, rng)
    assert COUNTERS[kind](ground.ground(inst)) == count_factored(inst)
