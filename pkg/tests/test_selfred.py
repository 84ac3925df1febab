import numpy as np
import pytest

from finegrained.errors import ArgumentError, OracleError, StructuralError
from finegrained.factored import FactoredShape, polynomial_count
from finegrained.instances import OvInstance
from finegrained.selfred import (
    INTEGER,
    PARITY,
    NoisyOracle,
    Oracle,
    PolynomialSpec,
    amplify,
    bit_slice_call,
    characteristic_vector,
    correct_integer,
    correct_parity,
    dense_ov_selfreduce,
    dense_parity_oracle,
)
from oracles import naive_ov


def product_spec(degree):
    """P(v) = v_0 * v_1 * ... with one variable per partition."""
    return PolynomialSpec(degree, degree, np.arange(degree), 1, lambda bits: int(np.prod(bits)))


def test_parity_call_counts():
    for d, calls in ((2, 7), (3, 15), (4, 31)):
        spec = product_spec(d)
        oracle = Oracle.exact(spec)
        correct_parity(spec, oracle, np.ones(d, dtype=np.uint8), np.random.default_rng(d))
        assert oracle.calls == calls


def test_parity_masks_are_uniform():
    spec = product_spec(2)
    seen = []
    oracle = Oracle(2, lambda bits: seen.append(tuple(bits)) or 0)
    rng = np.random.default_rng(5)
    for _ in range(2000):
        correct_parity(spec, oracle, np.ones(2, dtype=np.uint8), rng)
    ones = np.array(seen).mean()
    assert abs(ones - 0.5) < 0.02


def test_arity_mismatch_rejected():
    spec = product_spec(2)
    with pytest.raises(ArgumentError):
        correct_parity(spec, Oracle(3, lambda b: 0), np.ones(2), np.random.default_rng(0))
    with pytest.raises(ArgumentError):
        Oracle(3, lambda b: 0)(np.ones(2))
    with pytest.raises(StructuralError):
        PolynomialSpec(2, 2, [0, 2], 1, lambda b: 0)


def test_integer_sign_for_odd_degree():
    shape = FactoredShape(3, 1, 1, 1, "OV")
    spec = PolynomialSpec.for_factored(shape)
    rng = np.random.default_rng(11)
    for _ in range(10):
        v = rng.integers(0, 2, size=spec.n_bits, dtype=np.uint8)
        oracle = Oracle.exact(spec, INTEGER)
        assert correct_integer(spec, oracle, v, rng) == polynomial_count(v, shape) % (1 << spec.z)
        assert oracle.calls == (2 * spec.t) ** 3


def test_bit_slices_recover_integer_inputs():
    spec = product_spec(2)
    # P(u) for integer words equals the weighted sum of its bit-slice evaluations
    u = [5, 6]
    assert bit_slice_call(Oracle.exact(spec, INTEGER), u, spec, t=4) == 30 % 16


def test_integer_detects_inconsistent_oracle():
    spec = product_spec(2)
    junk = np.random.default_rng(3)
    oracle = Oracle(2, lambda bits: int(junk.integers(0, 1000)), INTEGER)
    with pytest.raises(OracleError):
        for seed in range(20):
            correct_integer(spec, oracle, np.ones(2, dtype=np.uint8), np.random.default_rng(seed))


def test_noisy_oracle_corrupts_at_the_given_rate():
    spec = product_spec(2)
    noisy = NoisyOracle(Oracle.exact(spec), 0.25, np.random.default_rng(2))
    for _ in range(4000):
        noisy(np.ones(2, dtype=np.uint8))
    assert abs(noisy.corrupted / 4000 - 0.25) < 0.03
    assert noisy.mode == PARITY


def test_amplify_boosts_a_weak_procedure():
    rng = np.random.default_rng(12)

    def weak(v, child):
        return v if child.random() >= 0.3 else 1 - v

    wins = sum(amplify(weak, 1, 31, rng) == 1 for _ in range(500))
    assert wins / 500 >= 0.95
    with pytest.raises(ArgumentError):
        amplify(weak, 1, 0, rng)


def test_dense_examples():
    empty = OvInstance([[], []], 2)
    oracle = dense_parity_oracle(2, 2)
    assert dense_ov_selfreduce(empty, oracle, np.random.default_rng(0)) == 0
    assert oracle.calls == 4
    full = OvInstance([[(0, 0), (0, 1), (1, 0), (1, 1)]] * 2, 2)
    assert dense_ov_selfreduce(full, dense_parity_oracle(2, 2), np.random.default_rng(1)) == naive_ov(full.lists, 2) % 2
    with pytest.raises(StructuralError):
        characteristic_vector([(0, 1), (0, 1)], 2)
