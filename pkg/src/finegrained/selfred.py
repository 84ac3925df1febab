"""Recover worst-case answers from oracles that are only trusted on random inputs."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ArgumentError, OracleError, StructuralError
from .factored import FactoredShape, polynomial_count, satisfying_tuples
from .hashing import ceil_lg
from .instances import OvInstance, pack_bits, unpack_bits

PARITY, INTEGER = "parity", "integer"


@dataclass
class PolynomialSpec:
    n_bits: int
    degree: int
    partition_map: np.ndarray
    bound: int
    evaluate: Callable[[np.ndarray], int]

    def __post_init__(self):
        self.partition_map = np.asarray(self.partition_map, dtype=np.int64)
        if self.degree < 1:
            raise ArgumentError("degree must be at least 1")
        if self.partition_map.shape != (self.n_bits,):
            raise StructuralError("partition map must cover every input bit")
        if self.n_bits and (self.partition_map.min() < 0 or self.partition_map.max() >= self.degree):
            raise StructuralError("partition ids must lie in [0, degree)")

    @property
    def z(self) -> int:
        return max(1, ceil_lg(self.bound))

    @property
    def t(self) -> int:
        return self.z + self.degree

    @classmethod
    def for_factored(cls, shape: FactoredShape) -> "PolynomialSpec":
        sat = len(satisfying_tuples(shape.predicate, shape.k, shape.b))
        return cls(
            n_bits=shape.length,
            degree=shape.degree,
            partition_map=shape.partition_map(),
            bound=max(1, shape.n**shape.k * sat**shape.g),
            evaluate=lambda bits: polynomial_count(bits, shape),
        )


class Oracle:
    """Counts calls and enforces the input length."""

    def __init__(self, arity: int, fn: Callable[[np.ndarray], int], mode: str = PARITY, bound: int = 1):
        if mode not in (PARITY, INTEGER):
            raise ArgumentError(f"unknown oracle mode {mode}")
        self.arity = arity
        self.fn = fn
        self.mode = mode
        self.bound = bound
        self.calls = 0

    @classmethod
    def exact(cls, spec: PolynomialSpec, mode: str = PARITY) -> "Oracle":
        return cls(spec.n_bits, spec.evaluate, mode, spec.bound)

    def __call__(self, bits) -> int:
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.shape != (self.arity,):
            raise ArgumentError(f"oracle expects {self.arity} bits, got {bits.size}")
        self.calls += 1
        value = int(self.fn(bits))
        return value & 1 if self.mode == PARITY else value


class NoisyOracle(Oracle):
    """Wraps an oracle and corrupts each answer independently with probability error_rate."""

    def __init__(self, inner: Oracle, error_rate: float, rng: np.random.Generator):
        super().__init__(inner.arity, inner.fn, inner.mode, inner.bound)
        self.inner = inner
        self.error_rate = error_rate
        self.rng = rng
        self.corrupted = 0

    def __call__(self, bits) -> int:
        value = self.inner(bits)
        self.calls += 1
        if self.rng.random() >= self.error_rate:
            return value
        self.corrupted += 1
        if self.mode == PARITY:
            return value ^ 1
        offset = int(self.rng.integers(1, self.bound + 1)) * (1 if self.rng.random() < 0.5 else -1)
        return value + offset


def _check_arity(spec: PolynomialSpec, oracle, v) -> np.ndarray:
    if oracle.arity != spec.n_bits:
        raise ArgumentError(f"oracle arity {oracle.arity} != spec input length {spec.n_bits}")
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (spec.n_bits,):
        raise ArgumentError(f"input has {v.size} bits, spec needs {spec.n_bits}")
    return v


def correct_parity(spec: PolynomialSpec, oracle, v, rng: np.random.Generator) -> int:
    """Parity of P(v) from 2^(d+1)-1 queries on uniformly masked inputs."""
    v = _check_arity(spec, oracle, v)
    masks = rng.integers(0, 2, size=(spec.degree + 1, spec.n_bits), dtype=np.uint8)
    answer = 0
    for size in range(1, spec.degree + 2):
        for subset in itertools.combinations(range(spec.degree + 1), size):
            u = v.copy()
            for idx in subset:
                u ^= masks[idx]
            answer ^= oracle(u) & 1
    return answer


def _uniform_words(rng: np.random.Generator, count: int, t: int) -> list:
    if t <= 62:
        return [int(x) for x in rng.integers(0, 1 << t, size=count, dtype=np.int64)]
    words = [0] * count
    for shift in range(0, t, 32):
        chunk = rng.integers(0, 1 << 32, size=count, dtype=np.int64)
        words = [w | (int(c) << shift) for w, c in zip(words, chunk)]
    return [w & ((1 << t) - 1) for w in words]


def bit_slice_call(oracle, u, spec: PolynomialSpec, t: int | None = None) -> int:
    """Sum over slice choices of 2^(sum of slices) * oracle(sliced bits), mod 2^t."""
    t = spec.t if t is None else t
    words = [int(x) for x in u]
    part = spec.partition_map
    modulus = 1 << t
    total = 0
    for slices in itertools.product(range(t), repeat=spec.degree):
        shift = np.asarray(slices, dtype=np.int64)[part]
        bits = np.array([(w >> int(s)) & 1 for w, s in zip(words, shift)], dtype=np.uint8)
        total += oracle(bits) << sum(slices)
    return total % modulus


def correct_integer(spec: PolynomialSpec, oracle, v, rng: np.random.Generator) -> int:
    """P(v) mod 2^z from (2t)^d queries whose bit slices are uniform.

    Each partition's words are shifted by +r or -r; summing over all 2^d
    sign patterns leaves 2^d (-1)^d P(v) modulo 2^t.
    """
    v = _check_arity(spec, oracle, v)
    d, t, z = spec.degree, spec.t, spec.z
    modulus = 1 << t
    r = _uniform_words(rng, spec.n_bits, t)
    part = spec.partition_map.tolist()
    acc = 0
    for signs in itertools.product((0, 1), repeat=d):
        u = [
            (-int(vi) + ri) % modulus if signs[p] else (-int(vi) - ri) % modulus
            for vi, ri, p in zip(v, r, part)
        ]
        acc += bit_slice_call(oracle, u, spec, t)
    acc %= modulus
    if acc % (1 << d):
        raise OracleError(f"accumulated value {acc} is not divisible by 2^{d}")
    value = acc >> d
    if d % 2:
        value = -value
    return value % (1 << z)


def amplify(procedure: Callable, v, repetitions: int, rng: np.random.Generator):
    """Plurality vote over independent runs, each with its own child generator.

    Runs that detect an inconsistent oracle are discarded.  Ties go to the
    smallest answer so the outcome is reproducible.
    """
    if repetitions < 1:
        raise ArgumentError("need at least one repetition")
    votes = Counter()
    for child in rng.spawn(repetitions):
        try:
            votes[procedure(v, child)] += 1
        except OracleError:
            continue
    if not votes:
        raise OracleError("every repetition hit an inconsistent oracle answer")
    top = max(votes.values())
    return min(ans for ans, c in votes.items() if c == top)


def characteristic_vector(vectors, dim: int) -> np.ndarray:
    out = np.zeros(1 << dim, dtype=np.uint8)
    for vec in vectors:
        idx = pack_bits(vec)
        if out[idx]:
            raise StructuralError(f"duplicate vector {vec} in a dense list")
        out[idx] = 1
    return out


def dense_instance(bits, k: int, dim: int) -> OvInstance:
    bits = np.asarray(bits, dtype=np.uint8).reshape(k, 1 << dim)
    return OvInstance([[unpack_bits(int(x), dim) for x in np.flatnonzero(row)] for row in bits], dim)


def dense_parity_oracle(k: int, dim: int) -> Oracle:
    from .brute import count_ov

    return Oracle(k << dim, lambda bits: count_ov(dense_instance(bits, k, dim)), PARITY)


def dense_ov_selfreduce(worst: OvInstance, parity_oracle, rng: np.random.Generator) -> int:
    """Parity of the worst-case count from 2^k queries on masked characteristic vectors."""
    k, dim = worst.k, worst.dim
    if parity_oracle.arity != k << dim:
        raise ArgumentError(f"oracle arity {parity_oracle.arity} != {k << dim}")
    chars = [characteristic_vector(lst, dim) for lst in worst.lists]
    masks = rng.integers(0, 2, size=(k, 1 << dim), dtype=np.uint8)
    answer = 0
    for pattern in itertools.product((0, 1), repeat=k):
        query = np.concatenate([m ^ c if p else m for m, c, p in zip(masks, chars, pattern)])
        answer ^= parity_oracle(query) & 1
    return answer
