"""Line-delimited JSON, DIMACS and edge-list formats."""

from __future__ import annotations

import hashlib
import json

from .errors import StructuralError
from .factored import FactoredInstance, FactoredVector, Predicate
from .instances import CnfFormula, Graph, OvInstance, SumInstance, XorInstance


def to_json(obj) -> dict:
    if isinstance(obj, (OvInstance, XorInstance)):
        kind = "ov" if isinstance(obj, OvInstance) else "xor"
        return {"kind": kind, "k": obj.k, "d": obj.dim, "lists": [[list(v) for v in lst] for lst in obj.lists]}
    if isinstance(obj, SumInstance):
        return {"kind": "sum", "k": obj.k, "lists": [[str(x) for x in lst] for lst in obj.lists]}
    if isinstance(obj, Graph):
        return {"kind": "graph", "n": obj.node_count, "edges": [list(e) for e in obj.sorted_edges()]}
    if isinstance(obj, CnfFormula):
        return {"kind": "cnf", "n": obj.var_count, "clauses": [list(c) for c in obj.clauses]}
    if isinstance(obj, FactoredInstance):
        return {
            "kind": "factored",
            "k": obj.k,
            "n": obj.n,
            "g": obj.g,
            "b": obj.b,
            "predicate": obj.predicate.to_json(),
            "lists": [[fv.to_strings() for fv in lst] for lst in obj.lists],
        }
    raise StructuralError(f"cannot serialize {type(obj).__name__}")


def from_json(data: dict):
    kind = data.get("kind")
    if kind == "ov":
        return OvInstance(data["lists"], data["d"])
    if kind == "xor":
        return XorInstance(data["lists"], data["d"])
    if kind == "sum":
        return SumInstance([[int(x) for x in lst] for lst in data["lists"]])
    if kind == "graph":
        return Graph(data["n"], frozenset(tuple(e) for e in data["edges"]))
    if kind == "cnf":
        return CnfFormula(data["n"], data["clauses"])
    if kind == "factored":
        b = data["b"]
        lists = [
            [FactoredVector(b, tuple(tuple(int(s, 2) for s in st) for st in fv)) for fv in lst]
            for lst in data["lists"]
        ]
        return FactoredInstance(lists, b, data["g"], Predicate.from_json(data["predicate"]))
    raise StructuralError(f"unknown instance kind {kind!r}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), sort_keys=True, separators=(",", ":"))


def loads(line: str):
    return from_json(json.loads(line))


def instance_hash(obj) -> str:
    return hashlib.sha256(dumps(obj).encode()).hexdigest()


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.var_count} {f.clause_count}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CnfFormula:
    var_count = None
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise StructuralError(f"bad DIMACS header {line!r}")
            var_count = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if var_count is None:
        raise StructuralError("DIMACS text has no header")
    return CnfFormula(var_count, clauses)


def to_edge_list(g: Graph) -> str:
    return "".join([f"# nodes {g.node_count}\n"] + [f"{u} {v}\n" for u, v in g.sorted_edges()])


def from_edge_list(text: str, node_count: int | None = None) -> Graph:
    edges = []
    declared = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "nodes":
                declared = int(parts[1])
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    n = node_count if node_count is not None else declared
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph(n, frozenset(edges))


def read_instances(text: str) -> list:
    """Parse JSON lines, DIMACS or an edge list, whichever the text looks like."""
    body = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not body:
        return []
    if body[0].startswith("{"):
        return [loads(ln) for ln in body]
    if any(ln.startswith("p cnf") for ln in body):
        return [from_dimacs(text)]
    return [from_edge_list(text)]
