"""Split plain vectors and numbers into g blocks of b bits."""

from __future__ import annotations

import itertools

from .errors import ArgumentError
from .factored import OV, SUM, XOR, FactoredInstance, FactoredVector, signed, unsigned
from .instances import OvInstance, SumInstance, XorInstance, pack_bits


def _split_vectors(inst, b: int, g: int, kind: str) -> FactoredInstance:
    if b < 1 or g < 1 or b * g != inst.dim:
        raise ArgumentError(f"b*g = {b * g} must equal dimension {inst.dim}")
    lists = [
        [FactoredVector(b, tuple((pack_bits(v[j * b:(j + 1) * b]),) for j in range(g))) for v in lst]
        for lst in inst.lists
    ]
    return FactoredInstance(lists, b, g, kind)


def factor_ov(inst: OvInstance, b: int, g: int) -> FactoredInstance:
    return _split_vectors(inst, b, g, OV)


def factor_xor(inst: XorInstance, b: int, g: int) -> FactoredInstance:
    return _split_vectors(inst, b, g, XOR)


def sum_blocks(x: int, b: int, g: int) -> tuple:
    """The g unsigned b-bit blocks of x as a bg-bit two's-complement word."""
    word = unsigned(x, b * g)
    return tuple((word >> (b * (g - 1 - j))) & ((1 << b) - 1) for j in range(g))


def factor_sum_blockwise(inst: SumInstance, b: int, g: int) -> FactoredInstance:
    if b < 1 or g < 1:
        raise ArgumentError("b and g must be positive")
    lists = [
        [FactoredVector(b, tuple((blk,) for blk in sum_blocks(x, b, g))) for x in lst]
        for lst in inst.lists
    ]
    return FactoredInstance(lists, b, g, SUM)


def count_sum_blockwise(inst: SumInstance, b: int, g: int) -> int:
    """Tuples whose signed b-bit blocks sum to zero in every position."""
    width = b * g
    lo, hi = -(1 << (width - 1)), 1 << (width - 1)
    mask = (1 << b) - 1
    total = 0
    for tup in itertools.product(*inst.lists):
        if any(not lo <= x < hi for x in tup):
            raise ArgumentError(f"value outside signed {width}-bit range")
        words = [x & ((1 << width) - 1) for x in tup]
        if all(sum(signed((w >> (b * j)) & mask, b) for w in words) == 0 for j in range(g)):
            total += 1
    return total
