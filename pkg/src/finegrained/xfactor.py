"""Reductions between factored problems.

The generic reductions guess the full satisfying tuple in the first list and
let the remaining lists confirm one coordinate each through an equality
gadget.  The padded reductions turn bitwise OV/XOR conditions into digit
sums that a single extra list of negated targets cancels.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import ArgumentError, CapacityError, StructuralError
from .factored import (
    ENUM_LIMIT,
    OV,
    SUM,
    XOR,
    FactoredInstance,
    FactoredVector,
    Predicate,
    satisfying_tuples,
    signed,
    unsigned,
)


def sat_tuple_index(predicate: Predicate, k: int, b: int) -> dict:
    """Map each first coordinate to the satisfying k-tuples that start with it."""
    index = defaultdict(list)
    for t in satisfying_tuples(predicate, k, b):
        index[t[0]].append(t)
    return dict(index)


def _concat(parts, width: int) -> int:
    out = 0
    for p in parts:
        out = (out << width) | p
    return out


def _map_sets(inst: FactoredInstance, gamma, b_out: int, predicate) -> FactoredInstance:
    lists = []
    for i, lst in enumerate(inst.lists):
        lists.append(
            [
                FactoredVector(b_out, tuple(sorted({x for u in members for x in gamma(i, u)}) for members in fv.sets))
                for fv in lst
            ]
        )
    return FactoredInstance(lists, b_out, inst.g, predicate)


def generic_to_xor(inst: FactoredInstance) -> FactoredInstance:
    k, b = inst.k, inst.b
    index = sat_tuple_index(inst.predicate, k, b)
    everything = range(1 << b)

    def gamma(i, u):
        if i == 0:
            return [_concat(t, b) for t in index.get(u, ())]
        if i == 1:
            return [_concat((s, u) + (0,) * (k - 2), b) for s in everything]
        return [u << (b * (k - 1 - i))]

    return _map_sets(inst, gamma, k * b, XOR)


def generic_to_ov(inst: FactoredInstance) -> FactoredInstance:
    k, b = inst.k, inst.b
    index = sat_tuple_index(inst.predicate, k, b)
    ones = (1 << b) - 1
    everything = range(1 << b)

    def same(x):  # AND-zero against flip(x) only
        return (x << b) | (ones ^ x)

    def flip(x):
        return ((ones ^ x) << b) | x

    filler = (1 << (2 * b)) - 1

    def gamma(i, u):
        if i == 0:
            return [_concat([same(x) for x in t], 2 * b) for t in index.get(u, ())]
        if i == 1:
            return [_concat([flip(s), flip(u)] + [filler] * (k - 2), 2 * b) for s in everything]
        return [_concat([filler] * i + [flip(u)] + [filler] * (k - 1 - i), 2 * b)]

    return _map_sets(inst, gamma, 2 * k * b, OV)


def generic_to_sum(inst: FactoredInstance) -> FactoredInstance:
    """Signed-digit guess-and-verify; output words have k*b+1 bits."""
    k, b = inst.k, inst.b
    index = sat_tuple_index(inst.predicate, k, b)
    width = k * b + 1
    everything = range(1 << b)

    def gamma(i, u):
        if i == 0:
            vals = [sum(signed(x, b) << (b * m) for m, x in enumerate(t)) for t in index.get(u, ())]
        elif i == 1:
            vals = [-signed(s, b) - (signed(u, b) << b) for s in everything]
        else:
            vals = [-(signed(u, b) << (b * i))]
        return [unsigned(v, width) for v in vals]

    return _map_sets(inst, gamma, width, SUM)


def digit_width(k: int) -> int:
    """Bits per digit so that a sum of k zero/one bits never carries."""
    return k.bit_length()


def _pad_to_sum(inst: FactoredInstance, allowed_digits, width: int | None = None) -> FactoredInstance:
    k, b = inst.k, inst.b
    c = digit_width(k) if width is None else width
    b_out = c * b + 1

    def spread(bits_value, digits=None):
        # digit for bit position p (p=0 is the most significant bit)
        return sum(
            (digits[p] if digits is not None else (bits_value >> (b - 1 - p)) & 1) << (c * (b - 1 - p))
            for p in range(b)
        )

    lists = []
    for lst in inst.lists:
        lists.append(
            [
                FactoredVector(b_out, tuple(tuple(unsigned(spread(u), b_out) for u in members) for members in fv.sets))
                for fv in lst
            ]
        )
    allowed_digits = list(allowed_digits)
    if len(allowed_digits) ** b > ENUM_LIMIT:
        raise CapacityError(f"{len(allowed_digits)}^{b} guessed digit strings exceeds limit")
    targets = set()
    _digit_strings(allowed_digits, b, [], targets, lambda ds: unsigned(-spread(0, ds), b_out))
    guess = FactoredVector(b_out, tuple(tuple(sorted(targets)) for _ in range(inst.g)))
    lists.append([guess])
    return FactoredInstance(lists, b_out, inst.g, SUM)


def _digit_strings(alphabet, length, prefix, out, encode):
    if len(prefix) == length:
        out.add(encode(prefix))
        return
    for d in alphabet:
        _digit_strings(alphabet, length, prefix + [d], out, encode)


def ov_to_sum_padded(inst: FactoredInstance, width: int | None = None) -> FactoredInstance:
    """(k+1)-SUM whose extra list guesses, per bit, a count of ones below k."""
    if inst.predicate.kind != OV:
        raise StructuralError("expects a factored OV instance")
    return _pad_to_sum(inst, range(inst.k), width)


def xor_to_sum_padded(inst: FactoredInstance, width: int | None = None) -> FactoredInstance:
    """(k+1)-SUM whose extra list guesses, per bit, an even count of ones."""
    if inst.predicate.kind != XOR:
        raise StructuralError("expects a factored XOR instance")
    return _pad_to_sum(inst, range(0, inst.k + 1, 2), width)


def between_factored(name: str):
    table = {
        "generic_to_xor": generic_to_xor,
        "generic_to_ov": generic_to_ov,
        "generic_to_sum": generic_to_sum,
        "ov_to_sum_padded": ov_to_sum_padded,
        "xor_to_sum_padded": xor_to_sum_padded,
    }
    if name not in table:
        raise ArgumentError(f"unknown reduction {name}")
    return table[name]
