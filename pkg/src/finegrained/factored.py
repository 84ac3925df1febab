"""Factored vectors, factored instances and their exact counters.

A b-bit string is stored as an int whose most significant bit is the first
character, so "01" is 1 and, read as a signed word, "11" is -1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, StructuralError

OV, XOR, SUM, CUSTOM = "OV", "XOR", "SUM", "CUSTOM"
ENUM_LIMIT = 2_000_000


def signed(value: int, b: int) -> int:
    """Two's-complement reading of a b-bit word."""
    return value - (1 << b) if value >> (b - 1) else value


def unsigned(x: int, b: int) -> int:
    """Inverse of `signed`; rejects values outside the b-bit signed range."""
    if not -(1 << (b - 1)) <= x < (1 << (b - 1)):
        raise ArgumentError(f"{x} does not fit in a signed {b}-bit word")
    return x % (1 << b)


def to_string(value: int, b: int) -> str:
    return format(value, f"0{b}b") if b else ""


def from_string(s: str) -> int:
    if any(c not in "01" for c in s):
        raise ArgumentError(f"not a bit string: {s!r}")
    return int(s, 2) if s else 0


@dataclass(frozen=True)
class Predicate:
    kind: str
    table: Optional[tuple] = None
    k: Optional[int] = None
    b: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (OV, XOR, SUM, CUSTOM):
            raise ArgumentError(f"unknown predicate {self.kind}")
        if self.kind == CUSTOM:
            if self.table is None or self.k is None or self.b is None:
                raise ArgumentError("custom predicate needs k, b and a table")
            table = tuple(int(bool(x)) for x in self.table)
            if len(table) != 1 << (self.k * self.b):
                raise ArgumentError(f"custom table needs {1 << (self.k * self.b)} entries")
            object.__setattr__(self, "table", table)

    @classmethod
    def custom(cls, k: int, b: int, table: Sequence[int]) -> "Predicate":
        return cls(CUSTOM, tuple(table), k, b)

    @classmethod
    def random_custom(cls, k: int, b: int, rng: np.random.Generator) -> "Predicate":
        return cls.custom(k, b, rng.integers(0, 2, size=1 << (k * b)).tolist())

    def holds(self, values: Sequence[int], b: int) -> bool:
        if self.kind == OV:
            acc = (1 << b) - 1
            for v in values:
                acc &= v
            return acc == 0
        if self.kind == XOR:
            acc = 0
            for v in values:
                acc ^= v
            return acc == 0
        if self.kind == SUM:
            return sum(signed(v, b) for v in values) == 0
        if len(values) != self.k or b != self.b:
            raise ArgumentError("custom predicate applied to the wrong shape")
        idx = 0
        for v in values:
            idx = (idx << b) | v
        return bool(self.table[idx])

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == CUSTOM:
            out.update(k=self.k, b=self.b, table="".join(map(str, self.table)))
        return out

    @classmethod
    def from_json(cls, data) -> "Predicate":
        if isinstance(data, str):
            return cls(data)
        if data["kind"] == CUSTOM:
            return cls.custom(data["k"], data["b"], [int(c) for c in data["table"]])
        return cls(data["kind"])


def _as_predicate(p) -> Predicate:
    return p if isinstance(p, Predicate) else Predicate(p)


def satisfies(predicate, strings: Sequence, b: Optional[int] = None) -> bool:
    """True iff the k-tuple of b-bit strings counts under the predicate."""
    predicate = _as_predicate(predicate)
    if strings and isinstance(strings[0], str):
        widths = {len(s) for s in strings}
        if len(widths) != 1 or (b is not None and widths != {b}):
            raise ArgumentError(f"strings have mismatched lengths {sorted(widths)}")
        b = widths.pop()
        values = [from_string(s) for s in strings]
    else:
        if b is None:
            raise ArgumentError("b is required for integer-coded strings")
        values = list(strings)
    return predicate.holds(values, b)


@lru_cache(maxsize=256)
def satisfying_tuples(predicate: Predicate, k: int, b: int) -> tuple:
    if (1 << (k * b)) > ENUM_LIMIT:
        raise CapacityError(f"2^{k * b} tuples exceeds enumeration limit")
    return tuple(t for t in itertools.product(range(1 << b), repeat=k) if predicate.holds(t, b))


@dataclass(frozen=True)
class FactoredVector:
    b: int
    sets: tuple

    def __post_init__(self):
        if self.b < 1:
            raise ArgumentError("b must be positive")
        norm = []
        for s in self.sets:
            members = tuple(sorted({int(x) for x in s}))
            if members and not (0 <= members[0] and members[-1] < (1 << self.b)):
                raise StructuralError(f"set member outside {self.b}-bit range")
            norm.append(members)
        if not norm:
            raise StructuralError("a factored vector needs at least one set")
        object.__setattr__(self, "sets", tuple(norm))

    @property
    def g(self) -> int:
        return len(self.sets)

    @classmethod
    def from_strings(cls, sets) -> "FactoredVector":
        widths = {len(s) for st in sets for s in st}
        if len(widths) > 1:
            raise StructuralError(f"strings of mixed length {sorted(widths)}")
        if not widths:
            raise StructuralError("cannot infer b from empty sets")
        return cls(widths.pop(), tuple(tuple(from_string(s) for s in st) for st in sets))

    def to_strings(self) -> list:
        return [[to_string(v, self.b) for v in s] for s in self.sets]


@dataclass(frozen=True)
class FactoredInstance:
    lists: tuple
    b: int
    g: int
    predicate: Predicate

    def __post_init__(self):
        object.__setattr__(self, "predicate", _as_predicate(self.predicate))
        lists = tuple(tuple(lst) for lst in self.lists)
        if len(lists) < 2:
            raise StructuralError("need at least two lists")
        for lst in lists:
            if not lst:
                raise StructuralError("factored lists must be nonempty")
            for fv in lst:
                if fv.b != self.b or fv.g != self.g:
                    raise StructuralError(
                        f"factored vector shape ({fv.b},{fv.g}) != ({self.b},{self.g})"
                    )
        p = self.predicate
        if p.kind == CUSTOM and (p.k != len(lists) or p.b != self.b):
            raise StructuralError("custom table shape does not match the instance")
        object.__setattr__(self, "lists", lists)

    @property
    def k(self) -> int:
        return len(self.lists)

    @property
    def sizes(self) -> tuple:
        return tuple(len(lst) for lst in self.lists)

    @property
    def n(self) -> int:
        return max(self.sizes)


def _set_tuple_count(predicate: Predicate, sets: Sequence[tuple], b: int) -> int:
    """Number of satisfying choices with the i-th string drawn from sets[i]."""
    if predicate.kind == CUSTOM:
        return sum(1 for t in itertools.product(*sets) if predicate.holds(t, b))
    if predicate.kind == OV:
        start, combine = (1 << b) - 1, lambda a, v: a & v
    elif predicate.kind == XOR:
        start, combine = 0, lambda a, v: a ^ v
    else:
        sets = [[signed(v, b) for v in s] for s in sets]
        start, combine = 0, lambda a, v: a + v
    partial = Counter({start: 1})
    for s in sets:
        nxt = Counter()
        for v in s:
            for acc, mult in partial.items():
                nxt[combine(acc, v)] += mult
        partial = nxt
    return partial.get(0, 0)


def _tuple_budget(inst: FactoredInstance, limit: int) -> None:
    total = 1
    for size in inst.sizes:
        total *= size
    if total > limit:
        raise CapacityError(f"{total} vector tuples exceeds limit {limit}")


def count_factored_product(inst: FactoredInstance, limit: int = ENUM_LIMIT) -> int:
    _tuple_budget(inst, limit)
    cache = {}
    total = 0
    for choice in itertools.product(*inst.lists):
        weight = 1
        for j in range(inst.g):
            key = tuple(fv.sets[j] for fv in choice)
            if key not in cache:
                cache[key] = _set_tuple_count(inst.predicate, key, inst.b)
            weight *= cache[key]
            if not weight:
                break
        total += weight
    return total


def count_factored_direct(inst: FactoredInstance, limit: int = ENUM_LIMIT) -> int:
    """Enumerate every choice of one string per (list, set) position."""
    _tuple_budget(inst, limit)
    total = 0
    for choice in itertools.product(*inst.lists):
        pools = [fv.sets[j] for fv in choice for j in range(inst.g)]
        work = 1
        for p in pools:
            work *= len(p)
        if work > limit:
            raise CapacityError(f"{work} string choices exceeds limit {limit}")
        for picks in itertools.product(*pools):
            # picks is ordered list-major: picks[i*g + j]
            if all(
                inst.predicate.holds([picks[i * inst.g + j] for i in range(inst.k)], inst.b)
                for j in range(inst.g)
            ):
                total += 1
    return total


def count_factored(inst: FactoredInstance, cross_check: bool = False) -> int:
    total = count_factored_product(inst)
    if cross_check:
        other = count_factored_direct(inst)
        if other != total:
            raise StructuralError(f"factored count routes disagree: {total} vs {other}")
    return total


def parity_factored(inst: FactoredInstance) -> int:
    return count_factored(inst) & 1


@dataclass(frozen=True)
class FactoredShape:
    k: int
    n: int
    g: int
    b: int
    predicate: Predicate

    def __post_init__(self):
        object.__setattr__(self, "predicate", _as_predicate(self.predicate))
        if min(self.k, self.n, self.g, self.b) < 1:
            raise ArgumentError("shape parameters must be positive")

    @property
    def length(self) -> int:
        return self.k * self.n * self.g * (1 << self.b)

    @property
    def degree(self) -> int:
        return self.k * self.g

    def index(self, i: int, ell: int, j: int, s: int) -> int:
        return ((i * self.n + ell) * self.g + j) * (1 << self.b) + s

    def partition_of(self, index: int) -> int:
        """Partition id in [0, kg): list i and set position j give i*g + j."""
        block = index >> self.b
        j = block % self.g
        i = block // (self.g * self.n)
        return i * self.g + j

    def partition_map(self) -> np.ndarray:
        return np.array([self.partition_of(x) for x in range(self.length)], dtype=np.int64)


@dataclass(frozen=True)
class IndicatorEncoding:
    bits: np.ndarray
    shape: FactoredShape

    @property
    def partition_map(self) -> np.ndarray:
        return self.shape.partition_map()


def shape_of(inst: FactoredInstance) -> FactoredShape:
    if len(set(inst.sizes)) != 1:
        raise StructuralError(f"lists have unequal sizes {inst.sizes}")
    return FactoredShape(inst.k, inst.n, inst.g, inst.b, inst.predicate)


def encode_bits(inst: FactoredInstance) -> IndicatorEncoding:
    shape = shape_of(inst)
    bits = np.zeros(shape.length, dtype=np.uint8)
    for i, lst in enumerate(inst.lists):
        for ell, fv in enumerate(lst):
            for j, members in enumerate(fv.sets):
                for s in members:
                    bits[shape.index(i, ell, j, s)] = 1
    return IndicatorEncoding(bits, shape)


def decode_bits(bits, shape: FactoredShape) -> FactoredInstance:
    bits = np.asarray(bits.bits if isinstance(bits, IndicatorEncoding) else bits)
    if bits.shape != (shape.length,):
        raise StructuralError(f"encoding has {bits.size} bits, shape needs {shape.length}")
    if np.any((bits != 0) & (bits != 1)):
        raise StructuralError("encoding is not binary")
    grid = bits.reshape(shape.k, shape.n, shape.g, 1 << shape.b)
    lists = [
        [
            FactoredVector(shape.b, tuple(tuple(np.flatnonzero(grid[i, ell, j]).tolist()) for j in range(shape.g)))
            for ell in range(shape.n)
        ]
        for i in range(shape.k)
    ]
    return FactoredInstance(lists, shape.b, shape.g, shape.predicate)


def polynomial_count(bits, shape: FactoredShape, limit: int = ENUM_LIMIT) -> int:
    """Evaluate the set-multilinear counting polynomial monomial by monomial.

    A monomial fixes a vector index per list and a satisfying tuple per set
    position; it multiplies the kg indicators those choices select.
    """
    bits = np.asarray(bits.bits if isinstance(bits, IndicatorEncoding) else bits)
    if bits.shape != (shape.length,):
        raise StructuralError(f"encoding has {bits.size} bits, shape needs {shape.length}")
    k, g = shape.k, shape.g
    sat = satisfying_tuples(shape.predicate, k, shape.b)
    monomials = shape.n**k * len(sat) ** g
    if monomials > limit:
        raise CapacityError(f"{monomials} monomials exceeds limit {limit}")
    flat = bits.tolist()
    full = set(range(shape.degree))
    total = 0
    for labels in itertools.product(range(shape.n), repeat=k):
        for picks in itertools.product(sat, repeat=g):
            variables = [
                shape.index(i, labels[i], j, picks[j][i]) for i in range(k) for j in range(g)
            ]
            if {shape.partition_of(x) for x in variables} != full or len(variables) != len(full):
                raise StructuralError("monomial is not one-variable-per-partition")
            term = 1
            for x in variables:
                term *= flat[x]
            total += term
    return total


def sample_uniform_factored(k: int, n: int, g: int, b: int, predicate, rng: np.random.Generator) -> FactoredInstance:
    shape = FactoredShape(k, n, g, b, predicate)
    return decode_bits(rng.integers(0, 2, size=shape.length, dtype=np.uint8), shape)


def pad_lists(inst: FactoredInstance, n: int) -> FactoredInstance:
    """Append zero-weight vectors (first set empty, others full) up to n per list."""
    filler = FactoredVector(inst.b, ((),) + tuple(tuple(range(1 << inst.b)) for _ in range(inst.g - 1)))
    lists = []
    for lst in inst.lists:
        if len(lst) > n:
            raise ArgumentError(f"list of size {len(lst)} exceeds target {n}")
        lists.append(tuple(lst) + (filler,) * (n - len(lst)))
    return FactoredInstance(lists, inst.b, inst.g, inst.predicate)
