"""Length-reducing hashes that keep every solution a solution."""

from __future__ import annotations

import numpy as np

from .brute import _aggregate
from .errors import ArgumentError
from .instances import SumInstance, XorInstance


def ceil_lg(n: int) -> int:
    return max(0, (n - 1).bit_length())


def xor_hash_length(k: int, n: int) -> int:
    return k * ceil_lg(n) + 2


def hash_xor_instance(inst: XorInstance, rng: np.random.Generator) -> XorInstance:
    """Multiply every vector by one uniform GF(2) matrix of width k*ceil(lg n)+2."""
    n = max(inst.sizes)
    width = xor_hash_length(inst.k, n)
    if width >= inst.dim:
        raise ArgumentError(f"target length {width} is not shorter than dimension {inst.dim}")
    matrix = rng.integers(0, 2, size=(inst.dim, width), dtype=np.int64)
    lists = []
    for lst in inst.lists:
        if lst:
            rows = (np.asarray(lst, dtype=np.int64) @ matrix) % 2
            lists.append([tuple(int(b) for b in row) for row in rows])
        else:
            lists.append([])
    return XorInstance(lists, width)


def centered_residue(x: int, m: int) -> int:
    r = x % m
    return r - m if r > m // 2 else r


def hash_sum_instance(inst: SumInstance, m: int, rng: np.random.Generator | None = None) -> SumInstance:
    """Replace each value by its centered residue mod m.

    With a generator, values are first scaled by a random unit mod m so that
    repeated hashing with the same modulus varies.
    """
    if m < 2:
        raise ArgumentError("modulus must be at least 2")
    scale = 1
    if rng is not None:
        while True:
            scale = int(rng.integers(1, m))
            if np.gcd(scale, m) == 1:
                break
    return SumInstance([[centered_residue(scale * x, m) for x in lst] for lst in inst.lists])


def residue_targets(m: int, k: int) -> list:
    """Sums a hashed k-tuple can take while still being 0 mod m."""
    bound = -(-k // 2)
    return [j * m for j in range(-bound, bound + 1)]


def count_sum_mod(inst: SumInstance, m: int) -> int:
    """Tuples whose sum is divisible by m."""
    return _aggregate([[x % m for x in lst] for lst in inst.lists], 0, lambda a, v: (a + v) % m, 0)
