"""k-clique to C(k,2)-list XOR, OV and SUM.

List (i, j) holds one vector per edge {u < v}, read as "node i is u and node
j is v".  Each vector has k sections, one per clique node.  Section a has
k-2 slots: the edge (1, a) (or (1, 2) for a = 1) writes its opinion of node
a into every slot, and each of the other k-2 edges touching a writes into its
own slot a value that cancels only against the same node.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ArgumentError, StructuralError
from .hashing import ceil_lg
from .instances import Graph, OvInstance, SumInstance, XorInstance, unpack_bits


def pair_lists(k: int) -> list:
    """The (i, j) list names, 1-based, in output order."""
    return list(itertools.combinations(range(1, k + 1), 2))


def node_width(n: int) -> int:
    return max(1, ceil_lg(n))


def section_plan(i: int, j: int, u: int, v: int, k: int) -> dict:
    """For edge (u, v) in list (i, j): section -> ("pos", node) or ("neg", slot, node)."""
    plan = {}
    if i == 1:
        plan[j] = ("pos", v)
        if j == 2:
            plan[1] = ("pos", u)
        else:
            plan[1] = ("neg", j - 3, u)
    else:
        plan[i] = ("neg", j - 3, u)
        plan[j] = ("neg", i - 2, v)
    return plan


def _check_k(g: Graph, k: int) -> None:
    if k < 3:
        raise ArgumentError("clique size must be at least 3")


def xor_gadgets(node: int, w: int):
    bits = unpack_bits(node, w)
    return bits, bits


def ov_gadgets(node: int, w: int):
    bits = unpack_bits(node, w)
    flipped = tuple(1 - x for x in bits)
    return bits + flipped, flipped + bits


def _bit_vectors(g: Graph, k: int, gadgets, slot_width: int, filler: int) -> tuple:
    _check_k(g, k)
    w = node_width(g.node_count)
    sw = slot_width * w
    section = (k - 2) * sw
    dim = k * section
    lists = []
    for i, j in pair_lists(k):
        lst = []
        for u, v in g.sorted_edges():
            vec = [filler] * dim
            for a, entry in section_plan(i, j, u, v, k).items():
                base = (a - 1) * section
                if entry[0] == "pos":
                    plus, _ = gadgets(entry[1], w)
                    for slot in range(k - 2):
                        vec[base + slot * sw: base + (slot + 1) * sw] = plus
                else:
                    _, minus = gadgets(entry[2], w)
                    slot = entry[1]
                    vec[base + slot * sw: base + (slot + 1) * sw] = minus
            lst.append(tuple(vec))
        lists.append(lst)
    return lists, dim


def clique_to_xor(g: Graph, k: int) -> XorInstance:
    lists, dim = _bit_vectors(g, k, xor_gadgets, 1, 0)
    return XorInstance(lists, dim)


def clique_to_ov(g: Graph, k: int) -> OvInstance:
    lists, dim = _bit_vectors(g, k, ov_gadgets, 2, 1)
    return OvInstance(lists, dim)


def sum_radix(k: int, n: int) -> int:
    return 2 * k * k * n


def clique_to_sum(g: Graph, k: int) -> SumInstance:
    _check_k(g, k)
    radix = sum_radix(k, g.node_count)
    cap = radix**k
    lists = []
    for i, j in pair_lists(k):
        lst = []
        for u, v in g.sorted_edges():
            total = 0
            for a, entry in section_plan(i, j, u, v, k).items():
                if entry[0] == "pos":
                    part = sum(entry[1] * radix**slot for slot in range(k - 2))
                else:
                    part = -entry[2] * radix ** entry[1]
                if abs(part) > cap:
                    raise StructuralError(f"section value {part} exceeds {cap}")
                total += part * radix ** (a * (k + 2))
            lst.append(total)
        lists.append(lst)
    return SumInstance(lists)


def decode_solution(g: Graph, k: int, picks) -> tuple:
    """Node labels chosen by a solution tuple (one edge index per list)."""
    edges = g.sorted_edges()
    chosen = {pair: edges[idx] for pair, idx in zip(pair_lists(k), picks)}
    nodes = [chosen[(1, 2)][0]] + [chosen[(1, j)][1] for j in range(2, k + 1)]
    for (i, j), (u, v) in chosen.items():
        if (u, v) != (nodes[i - 1], nodes[j - 1]):
            raise StructuralError(f"edge {(u, v)} in list {(i, j)} disagrees with {nodes}")
    return tuple(nodes)


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ArgumentError("edge probability must lie in [0, 1]")
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, frozenset(pair for pair, kept in zip(pairs, keep) if kept))
