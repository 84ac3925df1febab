"""Factored instances to plain kg-list OV/XOR/SUM instances.

Every string of set i of factored vector l in list j becomes one vector of
output list g*j + i.  A check region makes sure that the g vectors picked
for list j all came from the same factored vector: neighbouring positions i
and i+1 share a slot that only cancels when both carry the same label.
"""

from __future__ import annotations

from .errors import ArgumentError, CapacityError, StructuralError
from .factored import OV, SUM, XOR, FactoredInstance, pad_lists, signed
from .hashing import ceil_lg
from .instances import OvInstance, SumInstance, XorInstance, unpack_bits

VECTOR_LIMIT = 1 << 16


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def pad_to_power_of_two(inst: FactoredInstance) -> FactoredInstance:
    return pad_lists(inst, 1 << ceil_lg(inst.n))


def label_bits(label: int, width: int) -> tuple:
    return unpack_bits(label, width)


def complement(bits) -> tuple:
    return tuple(1 - x for x in bits)


def xor_slot(label: int, width: int, right: bool) -> tuple:
    # both neighbours write the plain label, so the slot cancels iff equal
    return label_bits(label, width)


def ov_slot(label: int, width: int, right: bool) -> tuple:
    nu = label_bits(label, width)
    return complement(nu) + nu if right else nu + complement(nu)


def _checked_shape(inst: FactoredInstance, kind: str):
    if inst.predicate.kind != kind:
        raise StructuralError(f"expects a factored {kind} instance")
    n = inst.n
    if not is_power_of_two(n):
        raise ArgumentError(f"list size {n} is not a power of two")
    if n << inst.b > VECTOR_LIMIT:
        raise CapacityError(f"{n << inst.b} vectors per list exceeds limit {VECTOR_LIMIT}")
    return n.bit_length() - 1


def _ground_bits(inst: FactoredInstance, kind: str, slot, slot_width: int, filler: int):
    w = _checked_shape(inst, kind)
    k, g, b = inst.k, inst.g, inst.b
    sw = slot_width * w
    block = (g - 1) * sw
    check_len = k * block
    out = [[] for _ in range(k * g)]
    for j, lst in enumerate(inst.lists):
        for label, fv in enumerate(lst):
            for i, members in enumerate(fv.sets):
                check = [filler] * check_len
                base = j * block
                if i > 0:
                    check[base + (i - 1) * sw: base + i * sw] = slot(label, w, False)
                if i < g - 1:
                    check[base + i * sw: base + (i + 1) * sw] = slot(label, w, True)
                for s in members:
                    data = [filler] * (b * g)
                    data[i * b:(i + 1) * b] = unpack_bits(s, b)
                    out[j * g + i].append(tuple(check + data))
    return out, check_len + b * g


def ground_xor(inst: FactoredInstance) -> XorInstance:
    lists, dim = _ground_bits(inst, XOR, xor_slot, 1, 0)
    return XorInstance(lists, dim)


def ground_ov(inst: FactoredInstance) -> OvInstance:
    lists, dim = _ground_bits(inst, OV, ov_slot, 2, 1)
    return OvInstance(lists, dim)


def sum_bases(b: int, k: int, n: int, g: int) -> tuple:
    """Radices for the data digits, label digits and per-list label blocks."""
    x = 1 << (b + ceil_lg(k))
    y = 1 << (ceil_lg(n) + ceil_lg(k))
    return x, y, y ** (g - 1)


def ground_sum(inst: FactoredInstance) -> SumInstance:
    _checked_shape(inst, SUM)
    k, g, b = inst.k, inst.g, inst.b
    x, y, z = sum_bases(b, k, inst.n, g)
    top = x**g
    out = [[] for _ in range(k * g)]
    for j, lst in enumerate(inst.lists):
        shift = top * z**j
        for label, fv in enumerate(lst):
            for i, members in enumerate(fv.sets):
                if g == 1:
                    tag = 0
                elif i == 0:
                    tag = label
                elif i < g - 1:
                    tag = y**i * label - y ** (i - 1) * label
                else:
                    tag = -(y ** (g - 2)) * label
                for s in members:
                    out[j * g + i].append(shift * tag + signed(s, b) * x**i)
    return SumInstance(out)


def ground(inst: FactoredInstance):
    kind = inst.predicate.kind
    if kind == XOR:
        return ground_xor(inst)
    if kind == OV:
        return ground_ov(inst)
    if kind == SUM:
        return ground_sum(inst)
    raise StructuralError(f"no grounding for predicate {kind}")
