"""Exact reference counters for the unfactored problems.

OV, XOR and SUM are counted by meet in the middle: each half of the lists is
folded into a map from its running AND/XOR/sum to the number of partial
tuples reaching it, and the two maps are joined.  This is exact and avoids
materializing the n^k tuples.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict

import numpy as np

from .errors import ArgumentError, CapacityError, StructuralError
from .instances import CnfFormula, Graph, OvInstance, SumInstance, XorInstance

SAT_VAR_LIMIT = 26


def parity_of(count: int) -> int:
    if count < 0:
        raise ArgumentError("counts are nonnegative")
    return count & 1


def _aggregate(lists, start, combine, target) -> int:
    """Single-pass fold; fine when the aggregate space is small (e.g. residues)."""
    partial = Counter({start: 1})
    for lst in lists:
        step = Counter()
        for value in lst:
            for acc, mult in partial.items():
                step[combine(acc, value)] += mult
        partial = step
        if not partial:
            return 0
    return partial.get(target, 0)


def _fold(lists, start, combine) -> Counter:
    partial = Counter({start: 1})
    for lst in lists:
        step = Counter()
        for value in lst:
            for acc, mult in partial.items():
                step[combine(acc, value)] += mult
        partial = step
    return partial


def _split_point(lists) -> int:
    best, best_cost = 1, None
    for h in range(1, len(lists)):
        left = right = 1
        for lst in lists[:h]:
            left *= max(1, len(lst))
        for lst in lists[h:]:
            right *= max(1, len(lst))
        cost = max(left, right)
        if best_cost is None or cost < best_cost:
            best, best_cost = h, cost
    return best


def _disjoint_pairs(left: dict, right: dict, dim: int) -> int:
    """Sum of left[a] * right[b] over pairs with a & b == 0."""
    if not left or not right:
        return 0
    if dim <= 63:
        keys = np.fromiter(right.keys(), dtype=np.uint64, count=len(right))
        mults = list(right.values())
        small = sum(mults) < (1 << 62) and sum(left.values()) < (1 << 62)
        weights = np.array(mults, dtype=np.int64 if small else object)
        total = 0
        for a, mult in left.items():
            hit = (keys & np.uint64(a)) == 0
            total += mult * int(weights[hit].sum())
        return total
    return sum(ma * mb for a, ma in left.items() for b, mb in right.items() if a & b == 0)


def count_ov(inst: OvInstance) -> int:
    lists = inst.packed()
    full = (1 << inst.dim) - 1
    h = _split_point(lists)
    combine = lambda a, v: a & v
    return _disjoint_pairs(_fold(lists[:h], full, combine), _fold(lists[h:], full, combine), inst.dim)


def count_xor(inst: XorInstance) -> int:
    lists = inst.packed()
    h = _split_point(lists)
    combine = lambda a, v: a ^ v
    left, right = _fold(lists[:h], 0, combine), _fold(lists[h:], 0, combine)
    return sum(m * right.get(a, 0) for a, m in left.items())


def count_sum(inst: SumInstance) -> int:
    lists = inst.lists
    h = _split_point(lists)
    combine = lambda a, v: a + v
    left, right = _fold(lists[:h], 0, combine), _fold(lists[h:], 0, combine)
    return sum(m * right.get(-a, 0) for a, m in left.items())


def count_cliques(g: Graph, k: int) -> int:
    if k < 1 or k > max(g.node_count, 1):
        raise ArgumentError(f"clique size {k} out of range for {g.node_count} nodes")
    adj = g.adjacency_masks()

    def extend(candidates: int, need: int) -> int:
        if need == 0:
            return 1
        total = 0
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            # only higher-numbered neighbours, so each clique is counted once
            total += extend(candidates & adj[v], need - 1)
        return total

    return extend((1 << g.node_count) - 1, k)


def count_sat(f: CnfFormula, limit: int = SAT_VAR_LIMIT, chunk_bits: int = 20) -> int:
    n = f.var_count
    if n > limit:
        raise CapacityError(f"{n} variables exceeds enumeration limit {limit}")
    if not f.clauses:
        return 1 << n
    chunk_bits = min(chunk_bits, n)
    low = np.arange(1 << chunk_bits, dtype=np.int64)
    total = 0
    for high in range(1 << (n - chunk_bits)):
        assign = low | (high << chunk_bits)
        ok = np.ones(assign.shape, dtype=bool)
        for clause in f.clauses:
            sat = np.zeros(assign.shape, dtype=bool)
            for lit in clause:
                # variable v is bit v-1 of the assignment integer
                bit = (assign >> (abs(lit) - 1)) & 1
                sat |= bit.astype(bool) if lit > 0 else ~bit.astype(bool)
            ok &= sat
        total += int(ok.sum())
    return total


def _tuple_rules(inst):
    if isinstance(inst, SumInstance):
        return inst.lists, 0, lambda a, v: a + v
    if isinstance(inst, XorInstance):
        return inst.packed(), 0, lambda a, v: a ^ v
    if isinstance(inst, OvInstance):
        return inst.packed(), (1 << inst.dim) - 1, lambda a, v: a & v
    raise StructuralError(f"unsupported instance type {type(inst).__name__}")


def _half_tuples(lists, start, combine) -> dict:
    table = defaultdict(list)
    for idx in itertools.product(*(range(len(lst)) for lst in lists)):
        acc = start
        for lst, j in zip(lists, idx):
            acc = combine(acc, lst[j])
        table[acc].append(idx)
    return table


def solution_tuples(inst, limit: int = 10**7):
    """Yield the index tuple of every solution, in lexicographic order.

    Both halves of the lists are tabulated by their aggregate and matched,
    so the work is about sqrt of the tuple count plus the output size.
    """
    lists, start, combine = _tuple_rules(inst)
    h = _split_point(lists)
    for part in (lists[:h], lists[h:]):
        size = 1
        for lst in part:
            size *= len(lst)
        if size > limit:
            raise CapacityError(f"half enumeration of {size} tuples exceeds {limit}")
    left = _half_tuples(lists[:h], start, combine)
    right = _half_tuples(lists[h:], start, combine)
    found = []
    right_keys = list(right)
    packed = None
    if isinstance(inst, OvInstance) and inst.dim <= 63 and right_keys:
        packed = np.array(right_keys, dtype=np.uint64)
    for a, heads in left.items():
        if packed is not None:
            hits = np.flatnonzero((packed & np.uint64(a)) == 0)
            tails = [t for x in hits for t in right[right_keys[x]]]
        elif isinstance(inst, OvInstance):
            tails = [t for b, ts in right.items() if a & b == 0 for t in ts]
        elif isinstance(inst, XorInstance):
            tails = right.get(a, [])
        else:
            tails = right.get(-a, [])
        found.extend(x + y for x in heads for y in tails)
    yield from sorted(found)


def count_instance(inst) -> int:
    if isinstance(inst, OvInstance):
        return count_ov(inst)
    if isinstance(inst, XorInstance):
        return count_xor(inst)
    if isinstance(inst, SumInstance):
        return count_sum(inst)
    if isinstance(inst, CnfFormula):
        return count_sat(inst)
    from .factored import FactoredInstance, count_factored

    if isinstance(inst, FactoredInstance):
        return count_factored(inst)
    raise StructuralError(f"cannot count {type(inst).__name__}")
