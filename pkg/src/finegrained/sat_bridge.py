"""CNF-SAT to OV by splitting variables, and factored OV back to CNF-SAT."""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError, CapacityError, StructuralError
from .factored import OV, FactoredInstance, pad_lists, sample_uniform_factored
from .hashing import ceil_lg
from .instances import CnfFormula, OvInstance

GROUP_LIMIT = 1 << 16


def split_padding(var_count: int, parts: int) -> int:
    """Fresh variables needed so that parts divides the variable count."""
    return (-var_count) % parts


def sat_to_ov(f: CnfFormula, parts: int) -> OvInstance:
    """One list per variable group, one vector per partial assignment.

    Coordinate c of a vector is 0 iff the partial assignment already makes
    clause c true.  Variables are padded up to a multiple of `parts` with
    fresh unconstrained ones, which multiplies the count by 2^pad.  A formula
    with no clauses gets a single all-zero coordinate.
    """
    if parts < 2:
        raise ArgumentError("need at least two groups")
    n = f.var_count + split_padding(f.var_count, parts)
    size = n // parts
    if 1 << size > GROUP_LIMIT:
        raise CapacityError(f"2^{size} assignments per group exceeds limit")
    clauses = f.clauses
    dim = max(1, len(clauses))
    lists = []
    for grp in range(parts):
        first = grp * size + 1  # variables first .. first+size-1
        lst = []
        for assign in range(1 << size):
            vec = [1] * len(clauses) if clauses else [0]
            for c, clause in enumerate(clauses):
                for lit in clause:
                    var = abs(lit)
                    if first <= var < first + size and ((assign >> (var - first)) & 1) == (lit > 0):
                        vec[c] = 0
                        break
            lst.append(tuple(vec))
        lists.append(lst)
    return OvInstance(lists, dim)


def fov_to_sat(inst: FactoredInstance) -> CnfFormula:
    """Selector bits pick a factored vector per list, payload bits pick its strings.

    List i has selector bits x(i, 0..L-1), most significant first, then
    payload bits y(i, j, p) for set j and bit p.  A clause forbids each
    payload string missing from the selected vector's set; a final family of
    clauses forbids a shared 1 in any payload coordinate.  Lists are padded
    to a power of two with zero-weight vectors.
    """
    if inst.predicate.kind != OV:
        raise StructuralError("expects a factored OV instance")
    sel = ceil_lg(inst.n)
    size = 1 << sel
    if any(s != size for s in inst.sizes):
        inst = pad_lists(inst, size)
    parts, g, b = inst.k, inst.g, inst.b
    if (parts * size * g) << b > 1 << 22:
        raise CapacityError("clause budget exceeds limit")

    def x(i, t):
        return 1 + i * sel + t

    def y(i, j, p):
        return 1 + parts * sel + (i * g + j) * b + p

    def differs(var_of, value, width):
        # satisfied iff the width-bit variable group is not equal to value
        return [-var_of(t) if (value >> (width - 1 - t)) & 1 else var_of(t) for t in range(width)]

    clauses = []
    for i, lst in enumerate(inst.lists):
        for label, fv in enumerate(lst):
            not_label = differs(lambda t: x(i, t), label, sel)
            for j, members in enumerate(fv.sets):
                present = set(members)
                for s in range(1 << b):
                    if s not in present:
                        clauses.append(not_label + differs(lambda p: y(i, j, p), s, b))
    for j in range(g):
        for p in range(b):
            clauses.append([-y(i, j, p) for i in range(parts)])
    return CnfFormula(parts * sel + parts * b * g, clauses)


def variable_count(parts: int, size: int, b: int, g: int) -> int:
    return parts * ceil_lg(size) + parts * b * g


def sample_dsat(size: int, b: int, g: int, parts: int, rng: np.random.Generator) -> CnfFormula:
    return fov_to_sat(sample_uniform_factored(parts, size, g, b, OV, rng))


def sample_dov_chain(n_vars: int, b: int, g: int, parts: int, k: int, rng: np.random.Generator) -> OvInstance:
    """A sample_dsat formula with 2^(n_vars/parts) vectors per list, split into k groups."""
    if n_vars % parts:
        raise ArgumentError("parts must divide n_vars")
    return sat_to_ov(sample_dsat(1 << (n_vars // parts), b, g, parts, rng), k)
