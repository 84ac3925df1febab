"""Immutable value types for unfactored problems.

Bit vectors are tuples of 0/1 ints, index 0 first.  Wherever a vector is
packed into an int, index 0 becomes the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ArgumentError, StructuralError

BitVector = tuple


def as_bitvector(bits: Iterable[int]) -> tuple:
    vec = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in vec):
        raise StructuralError(f"bit vector has non-binary entries: {vec}")
    return vec


def pack_bits(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


def unpack_bits(value: int, width: int) -> tuple:
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


class _VectorLists:
    """Shared validation for OV and XOR instances."""

    lists: tuple
    dim: int

    def _normalize(self, lists, dim):
        norm = tuple(tuple(as_bitvector(v) for v in lst) for lst in lists)
        if len(norm) < 2:
            raise StructuralError("need at least two lists")
        dims = {len(v) for lst in norm for v in lst}
        if dim is None:
            if not dims:
                raise StructuralError("dimension unknown: every list is empty")
            if len(dims) != 1:
                raise StructuralError(f"mixed dimensions {sorted(dims)}")
            dim = dims.pop()
        elif dims - {dim}:
            raise StructuralError(f"vectors do not all have dimension {dim}")
        if dim < 1:
            raise StructuralError("dimension must be positive")
        object.__setattr__(self, "lists", norm)
        object.__setattr__(self, "dim", dim)

    @property
    def k(self) -> int:
        return len(self.lists)

    @property
    def sizes(self) -> tuple:
        return tuple(len(lst) for lst in self.lists)

    def packed(self) -> list:
        return [[pack_bits(v) for v in lst] for lst in self.lists]

    def with_lists(self, lists):
        return type(self)(lists, self.dim)


@dataclass(frozen=True)
class OvInstance(_VectorLists):
    lists: tuple
    dim: Optional[int] = None

    def __post_init__(self):
        self._normalize(self.lists, self.dim)


@dataclass(frozen=True)
class XorInstance(_VectorLists):
    lists: tuple
    dim: Optional[int] = None

    def __post_init__(self):
        self._normalize(self.lists, self.dim)


@dataclass(frozen=True)
class SumInstance:
    lists: tuple

    def __post_init__(self):
        norm = tuple(tuple(int(x) for x in lst) for lst in self.lists)
        if len(norm) < 2:
            raise StructuralError("need at least two lists")
        object.__setattr__(self, "lists", norm)

    @property
    def k(self) -> int:
        return len(self.lists)

    @property
    def sizes(self) -> tuple:
        return tuple(len(lst) for lst in self.lists)

    def with_lists(self, lists):
        return SumInstance(lists)


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.node_count < 0:
            raise ArgumentError("node_count must be nonnegative")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise StructuralError(f"self-loop at {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise StructuralError(f"edge ({u},{v}) outside [0,{self.node_count})")
            pair = (min(u, v), max(u, v))
            if pair in norm:
                raise StructuralError(f"duplicate edge {pair}")
            norm.add(pair)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def adjacency_masks(self) -> list:
        adj = [0] * self.node_count
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables 1..var_count; literals are signed ints (DIMACS)."""

    var_count: int
    clauses: tuple = ()

    def __post_init__(self):
        if self.var_count < 0:
            raise ArgumentError("var_count must be nonnegative")
        norm = []
        for clause in self.clauses:
            c = tuple(int(lit) for lit in clause)
            if not c:
                raise StructuralError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.var_count:
                    raise StructuralError(f"literal {lit} outside 1..{self.var_count}")
            norm.append(c)
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)
