"""Deliberately naive reference enumerators, independent of the library's counters."""

import itertools


def naive_ov(lists, dim):
    return sum(
        1 for tup in itertools.product(*lists)
        if all(any(v[c] == 0 for v in tup) for c in range(dim))
    )


def naive_xor(lists, dim):
    return sum(
        1 for tup in itertools.product(*lists)
        if all(sum(v[c] for v in tup) % 2 == 0 for c in range(dim))
    )


def naive_sum(lists):
    return sum(1 for tup in itertools.product(*lists) if sum(tup) == 0)


def naive_cliques(n, edges, k):
    es = {frozenset(e) for e in edges}
    return sum(
        1 for nodes in itertools.combinations(range(n), k)
        if all(frozenset(p) in es for p in itertools.combinations(nodes, 2))
    )


def naive_sat(n, clauses):
    total = 0
    for assign in itertools.product((False, True), repeat=n):
        if all(any(assign[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            total += 1
    return total


def signed_str(s):
    v = int(s, 2)
    return v - (1 << len(s)) if s[0] == "1" else v


def block_holds(kind, strings, table=None):
    """Predicate on a tuple of equal-length '0'/'1' strings."""
    if kind == "OV":
        return all(any(s[c] == "0" for s in strings) for c in range(len(strings[0])))
    if kind == "XOR":
        return all(sum(int(s[c]) for s in strings) % 2 == 0 for c in range(len(strings[0])))
    if kind == "SUM":
        return sum(signed_str(s) for s in strings) == 0
    return bool(table[int("".join(strings), 2)])


def naive_factored(lists_of_sets, kind, table=None):
    """lists_of_sets[i][l][j] is a list of b-bit strings.

    Expands every factored vector into all of its represented bg-bit words
    and checks the predicate block by block.
    """
    def words(fv):
        return list(itertools.product(*fv))

    total = 0
    for choice in itertools.product(*lists_of_sets):
        for picks in itertools.product(*(words(fv) for fv in choice)):
            g = len(picks[0])
            if all(block_holds(kind, [p[j] for p in picks], table) for j in range(g)):
                total += 1
    return total


def factored_as_strings(inst):
    return [[fv.to_strings() for fv in lst] for lst in inst.lists]


def naive_factored_count(inst):
    table = inst.predicate.table
    return naive_factored(factored_as_strings(inst), inst.predicate.kind, table)
