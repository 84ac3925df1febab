"""Reduction chains, the verification harness, presets and distribution samplers."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import clique, ground, lift, sat_bridge, xfactor
from .brute import count_cliques, count_instance
from .errors import ArgumentError, ConfigurationError
from .factored import (
    CUSTOM,
    OV,
    SUM,
    XOR,
    FactoredInstance,
    Predicate,
    sample_uniform_factored,
)
from .hashing import count_sum_mod, hash_sum_instance, hash_xor_instance, xor_hash_length
from .instances import CnfFormula, Graph, OvInstance, SumInstance, XorInstance
from .serialize import instance_hash, to_json

FACTORED = ("factored-ov", "factored-xor", "factored-sum", "factored-custom")


def kind_of(obj) -> str:
    if isinstance(obj, OvInstance):
        return "ov"
    if isinstance(obj, XorInstance):
        return "xor"
    if isinstance(obj, SumInstance):
        return "sum"
    if isinstance(obj, Graph):
        return "graph"
    if isinstance(obj, CnfFormula):
        return "cnf"
    if isinstance(obj, FactoredInstance):
        return "factored-" + obj.predicate.kind.lower()
    raise ConfigurationError(f"no kind for {type(obj).__name__}")


@dataclass(frozen=True)
class StepDef:
    accepts: tuple
    output: Callable[[str], str]
    apply: Callable
    params: tuple = ()
    relation: str = "equal"  # equal | scaled | at_least
    measure_in: Optional[Callable] = None
    measure_out: Optional[Callable] = None


def _same(kind):
    return kind


def _const(kind):
    return lambda _: kind


def _pad_dimension(inst, p, rng):
    extra = p["d"] - inst.dim
    if extra < 0:
        raise ArgumentError(f"dimension {inst.dim} already exceeds {p['d']}")
    lists = [[tuple(v) + (0,) * extra for v in lst] for lst in inst.lists]
    return type(inst)(lists, p["d"])


def _grounded(fn):
    return lambda inst, p, rng: fn(ground.pad_to_power_of_two(inst))


STEPS = {
    "identity": StepDef(
        ("ov", "xor", "sum", "graph", "cnf") + FACTORED, _same, lambda i, p, r: i
    ),
    "pad_dimension": StepDef(("ov", "xor"), _same, _pad_dimension, ("d",)),
    "factor_ov": StepDef(("ov",), _const("factored-ov"), lambda i, p, r: lift.factor_ov(i, p["b"], p["g"]), ("b", "g")),
    "factor_xor": StepDef(("xor",), _const("factored-xor"), lambda i, p, r: lift.factor_xor(i, p["b"], p["g"]), ("b", "g")),
    "factor_sum_blockwise": StepDef(
        ("sum",),
        _const("factored-sum"),
        lambda i, p, r: lift.factor_sum_blockwise(i, p["b"], p["g"]),
        ("b", "g"),
        measure_in=lambda i, p: lift.count_sum_blockwise(i, p["b"], p["g"]),
    ),
    "generic_to_xor": StepDef(FACTORED, _const("factored-xor"), lambda i, p, r: xfactor.generic_to_xor(i)),
    "generic_to_ov": StepDef(FACTORED, _const("factored-ov"), lambda i, p, r: xfactor.generic_to_ov(i)),
    "generic_to_sum": StepDef(FACTORED, _const("factored-sum"), lambda i, p, r: xfactor.generic_to_sum(i)),
    "ov_to_sum_padded": StepDef(("factored-ov",), _const("factored-sum"), lambda i, p, r: xfactor.ov_to_sum_padded(i)),
    "xor_to_sum_padded": StepDef(("factored-xor",), _const("factored-sum"), lambda i, p, r: xfactor.xor_to_sum_padded(i)),
    "pad_lists": StepDef(FACTORED, _same, lambda i, p, r: ground.pad_to_power_of_two(i)),
    "ground_xor": StepDef(("factored-xor",), _const("xor"), _grounded(ground.ground_xor)),
    "ground_ov": StepDef(("factored-ov",), _const("ov"), _grounded(ground.ground_ov)),
    "ground_sum": StepDef(("factored-sum",), _const("sum"), _grounded(ground.ground_sum)),
    "clique_to_xor": StepDef(
        ("graph",), _const("xor"), lambda i, p, r: clique.clique_to_xor(i, p["k"]), ("k",),
        measure_in=lambda i, p: count_cliques(i, p["k"]),
    ),
    "clique_to_ov": StepDef(
        ("graph",), _const("ov"), lambda i, p, r: clique.clique_to_ov(i, p["k"]), ("k",),
        measure_in=lambda i, p: count_cliques(i, p["k"]),
    ),
    "clique_to_sum": StepDef(
        ("graph",), _const("sum"), lambda i, p, r: clique.clique_to_sum(i, p["k"]), ("k",),
        measure_in=lambda i, p: count_cliques(i, p["k"]),
    ),
    "sat_to_ov": StepDef(
        ("cnf",), _const("ov"), lambda i, p, r: sat_bridge.sat_to_ov(i, p["parts"]), ("parts",),
        relation="scaled",
    ),
    "fov_to_sat": StepDef(("factored-ov",), _const("cnf"), lambda i, p, r: sat_bridge.fov_to_sat(i)),
    "hash_xor": StepDef(("xor",), _same, lambda i, p, r: hash_xor_instance(i, r), relation="at_least"),
    "hash_sum": StepDef(
        ("sum",), _same, lambda i, p, r: hash_sum_instance(i, p["m"], r), ("m",),
        relation="at_least",
        measure_out=lambda o, p: count_sum_mod(o, p["m"]),
    ),
}


@dataclass(frozen=True)
class ReductionStep:
    name: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in STEPS:
            raise ConfigurationError(f"unknown reduction step {self.name!r}")
        missing = [p for p in STEPS[self.name].params if p not in self.params]
        if missing:
            raise ConfigurationError(f"step {self.name} is missing parameters {missing}")
        object.__setattr__(self, "params", {k: int(v) for k, v in self.params.items()})

    @property
    def definition(self) -> StepDef:
        return STEPS[self.name]

    @property
    def input_kinds(self) -> tuple:
        return self.definition.accepts

    def output_kind(self, input_kind: str) -> str:
        return self.definition.output(input_kind)

    def to_json(self) -> dict:
        return {"name": self.name, "params": dict(self.params)}

    @classmethod
    def from_json(cls, data) -> "ReductionStep":
        return cls(data["name"], dict(data.get("params", {})))


def chain_kinds(steps, input_kind: str) -> list:
    kinds = [input_kind]
    for idx, step in enumerate(steps):
        if kinds[-1] not in step.input_kinds:
            raise ConfigurationError(
                f"step {idx} ({step.name}) accepts {step.input_kinds}, got {kinds[-1]}"
            )
        kinds.append(step.output_kind(kinds[-1]))
    return kinds


def step_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def check_step(step: ReductionStep, before, after) -> dict:
    d = step.definition
    count_in = (d.measure_in or (lambda i, p: count_instance(i)))(before, step.params)
    count_out = (d.measure_out or (lambda o, p: count_instance(o)))(after, step.params)
    if d.relation == "scaled":
        expected = count_in << sat_bridge.split_padding(before.var_count, step.params["parts"])
        ok = count_out == expected
    elif d.relation == "at_least":
        expected = count_in
        ok = count_out >= count_in
    else:
        expected = count_in
        ok = count_out == count_in
    return {
        "relation": d.relation,
        "input_count": count_in,
        "output_count": count_out,
        "expected": expected,
        "ok": ok,
        "parity_ok": (count_out & 1) == (expected & 1),
    }


def run_chain(steps, instance, seed: int = 0, check: bool = False, override: Optional[Callable] = None):
    """Apply the steps in order, logging hashes, parameters and stream keys.

    `override`, if given, replaces the apply function of every step; it is
    how mutated constructions are fed through the same harness.
    """
    steps = [s if isinstance(s, ReductionStep) else ReductionStep.from_json(s) for s in steps]
    chain_kinds(steps, kind_of(instance))
    log = []
    current = instance
    for idx, step in enumerate(steps):
        rng = step_rng(seed, idx)
        apply = override or step.definition.apply
        nxt = apply(current, step.params, rng)
        entry = {
            "index": idx,
            "step": step.name,
            "params": dict(step.params),
            "input_kind": kind_of(current),
            "output_kind": kind_of(nxt),
            "input_hash": instance_hash(current),
            "output_hash": instance_hash(nxt),
            "seed": {"root": seed, "spawn_key": [idx]},
        }
        if check:
            entry["check"] = check_step(step, current, nxt)
        log.append(entry)
        current = nxt
    return current, log


@dataclass(frozen=True)
class Bounds:
    max_n: int = 4
    max_k: int = 3
    max_b: int = 2
    max_g: int = 2
    max_nodes: int = 6
    max_vars: int = 10
    max_clauses: int = 8


def _bits(rng, rows, dim, density=0.5):
    return [tuple(int(x) for x in row) for row in (rng.random((rows, dim)) < density)]


def random_vectors(kind: str, k: int, sizes, dim: int, rng):
    density = 0.35 if kind == "ov" else 0.5
    lists = [_bits(rng, s, dim, density) for s in sizes]
    return (OvInstance if kind == "ov" else XorInstance)(lists, dim)


def random_sums(k: int, sizes, width: int, rng) -> SumInstance:
    lo, hi = -(1 << (width - 1)), 1 << (width - 1)
    return SumInstance([[int(x) for x in rng.integers(lo, hi, size=s)] for s in sizes])


def random_cnf(n_vars: int, n_clauses: int, rng, max_width: int = 3) -> CnfFormula:
    clauses = []
    for _ in range(n_clauses):
        width = int(rng.integers(1, min(max_width, n_vars) + 1))
        chosen = rng.choice(np.arange(1, n_vars + 1), size=width, replace=False)
        clauses.append([int(v) if rng.random() < 0.5 else -int(v) for v in chosen])
    return CnfFormula(n_vars, clauses)


def random_factored(kind: str, bounds: Bounds, rng, max_n: Optional[int] = None) -> FactoredInstance:
    k = int(rng.integers(2, bounds.max_k + 1))
    b = int(rng.integers(1, bounds.max_b + 1))
    g = int(rng.integers(1, bounds.max_g + 1))
    n = int(rng.integers(1, (max_n or bounds.max_n) + 1))
    if kind == CUSTOM:
        pred = Predicate.random_custom(k, b, rng)
    else:
        pred = Predicate(kind)
    return sample_uniform_factored(k, n, g, b, pred, rng)


def _sizes(rng, k, max_n):
    return [int(rng.integers(1, max_n + 1)) for _ in range(k)]


def random_case(name: str, bounds: Bounds, rng):
    """A random (input, params) pair suitable for one step."""
    k = int(rng.integers(2, bounds.max_k + 1))
    if name in ("factor_ov", "factor_xor"):
        b, g = int(rng.integers(1, bounds.max_b + 1)), int(rng.integers(1, bounds.max_g + 1))
        kind = "ov" if name == "factor_ov" else "xor"
        return random_vectors(kind, k, _sizes(rng, k, bounds.max_n), b * g, rng), {"b": b, "g": g}
    if name == "factor_sum_blockwise":
        b, g = int(rng.integers(1, bounds.max_b + 1)), int(rng.integers(1, bounds.max_g + 1))
        return random_sums(k, _sizes(rng, k, bounds.max_n), b * g, rng), {"b": b, "g": g}
    if name in ("generic_to_xor", "generic_to_ov", "generic_to_sum", "pad_lists"):
        kind = [OV, XOR, SUM, CUSTOM][int(rng.integers(0, 4))]
        return random_factored(kind, bounds, rng, max_n=min(2, bounds.max_n)), {}
    if name in ("ov_to_sum_padded", "xor_to_sum_padded"):
        kind = OV if name.startswith("ov") else XOR
        return random_factored(kind, bounds, rng, max_n=min(2, bounds.max_n)), {}
    if name in ("ground_xor", "ground_ov", "ground_sum"):
        kind = {"ground_xor": XOR, "ground_ov": OV, "ground_sum": SUM}[name]
        return random_factored(kind, bounds, rng), {}
    if name.startswith("clique_to_"):
        ck = int(rng.choice([3, 4]))
        n = int(rng.integers(ck, max(ck, bounds.max_nodes) + 1))
        p = float(rng.choice([0.3, 0.6, 1.0]))
        return clique.sample_gnp(n, p, rng), {"k": ck}
    if name == "sat_to_ov":
        n = int(rng.integers(1, bounds.max_vars + 1))
        return random_cnf(n, int(rng.integers(0, bounds.max_clauses + 1)), rng), {"parts": int(rng.choice([2, 3]))}
    if name == "fov_to_sat":
        return random_factored(OV, bounds, rng), {}
    if name == "hash_xor":
        n = bounds.max_n
        dim = xor_hash_length(k, n) + int(rng.integers(1, 5))
        return random_vectors("xor", k, _sizes(rng, k, n), dim, rng), {}
    if name == "hash_sum":
        return random_sums(k, _sizes(rng, k, bounds.max_n), 8, rng), {"m": int(rng.integers(2, 11))}
    if name == "pad_dimension":
        kind = "ov" if rng.random() < 0.5 else "xor"
        dim = int(rng.integers(1, 5))
        return random_vectors(kind, k, _sizes(rng, k, bounds.max_n), dim, rng), {"d": dim + int(rng.integers(0, 3))}
    if name == "identity":
        return random_vectors("ov", k, _sizes(rng, k, bounds.max_n), 3, rng), {}
    raise ConfigurationError(f"no random inputs for step {name!r}")


@dataclass(frozen=True)
class Preset:
    name: str
    target: str
    source: str
    K: int
    k: int
    g: int
    b: int
    n: int
    steps: tuple

    def random_input(self, rng):
        width = self.b * self.g
        if self.source == "eth":
            # 2^(n_vars/k) partial assignments per list gives n vectors
            n_vars = self.k * max(1, self.n.bit_length() - 1)
            return random_cnf(n_vars, int(rng.integers(0, width + 1)), rng)
        if self.source in ("ov", "xor"):
            return random_vectors(self.source, self.k, [self.n] * self.k, width, rng)
        return random_sums(self.k, [self.n] * self.k, width, rng)

    def to_json(self) -> dict:
        return {
            "name": self.name, "target": self.target, "source": self.source, "K": self.K,
            "k": self.k, "g": self.g, "b": self.b, "n": self.n,
            "steps": [s.to_json() for s in self.steps],
        }


def _preset(table: int, target: str, source: str, k: int, g: int, b: int, n: int = 2) -> Preset:
    steps = []
    if source == "eth":
        steps += [("sat_to_ov", {"parts": k}), ("pad_dimension", {"d": b * g}), ("factor_ov", {"b": b, "g": g})]
    elif source == "sum":
        steps.append(("factor_sum_blockwise", {"b": b, "g": g}))
    else:
        steps.append((f"factor_{source}", {"b": b, "g": g}))
    factored = "ov" if source == "eth" else source
    K = k * g
    if target != factored:
        if target == "sum":
            steps.append((f"{factored}_to_sum_padded", {}))
            K = (k + 1) * g
        else:
            steps.append((f"generic_to_{target}", {}))
    steps.append((f"ground_{target}", {}))
    name = f"table{table}-{target}-from-{source}"
    return Preset(name, target, source, K, k, g, b, n, tuple(ReductionStep(s, p) for s, p in steps))


# Desk-scale constants: square roots of K become 2, cube roots of K become 2
# with g = 4, b stays at 1 (2 when a CNF must fit b*g clauses), n = 2.
PRESETS = {
    p.name: p
    for p in [
        _preset(2, "ov", "eth", k=2, g=2, b=2, n=4),
        _preset(2, "ov", "ov", k=2, g=2, b=1),
        _preset(2, "ov", "xor", k=2, g=4, b=1),
        _preset(2, "ov", "sum", k=2, g=4, b=1),
        _preset(3, "xor", "eth", k=2, g=4, b=1, n=4),
        _preset(3, "xor", "ov", k=2, g=4, b=1),
        _preset(3, "xor", "xor", k=2, g=2, b=1),
        _preset(3, "xor", "sum", k=2, g=4, b=1),
        _preset(4, "sum", "eth", k=2, g=2, b=1, n=4),
        _preset(4, "sum", "ov", k=2, g=2, b=1),
        _preset(4, "sum", "xor", k=2, g=2, b=1),
        _preset(4, "sum", "sum", k=2, g=2, b=1),
    ]
}


def preset(name: str) -> Preset:
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    return PRESETS[name]


@dataclass
class TrialResult:
    index: int
    ok: bool
    input_count: Optional[int] = None
    output_count: Optional[int] = None
    detail: str = ""
    counterexample: Optional[dict] = None


@dataclass
class Report:
    target: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "trials": len(self.results),
            "passed": self.passed,
            "failures": [
                {"index": r.index, "input_count": r.input_count, "output_count": r.output_count,
                 "detail": r.detail, "counterexample": r.counterexample}
                for r in self.failures
            ],
        }


def _trial(target, bounds: Bounds, seed: int, index: int, override) -> TrialResult:
    rng = step_rng(seed, index)
    if isinstance(target, Preset):
        instance, steps = target.random_input(rng), list(target.steps)
    else:
        instance, params = random_case(target, bounds, rng)
        steps = [ReductionStep(target, params)]
    trial_seed = int(rng.integers(0, 2**63))
    try:
        _, log = run_chain(steps, instance, seed=trial_seed, check=True, override=override)
    except Exception as exc:  # a crash on a valid input is a failure, not an abort
        return TrialResult(index, False, detail=f"{type(exc).__name__}: {exc}",
                           counterexample={"input": to_json(instance), "steps": [s.to_json() for s in steps]})
    checks = [e["check"] for e in log]
    ok = all(c["ok"] for c in checks)
    result = TrialResult(index, ok, checks[0]["input_count"], checks[-1]["output_count"])
    if not ok:
        bad = next(e for e in log if not e["check"]["ok"])
        result.detail = f"step {bad['step']}: expected {bad['check']['expected']}, got {bad['check']['output_count']}"
        result.counterexample = {"input": to_json(instance), "steps": [s.to_json() for s in steps], "seed": trial_seed}
    return result


def _trial_star(args):
    return _trial(*args)


def verify(target, trials: int = 100, bounds: Bounds = Bounds(), seed: int = 0,
           jobs: int = 1, override: Optional[Callable] = None) -> Report:
    """Brute-force both sides of a step or preset chain on random inputs."""
    if isinstance(target, str) and target in PRESETS:
        target = PRESETS[target]
    elif isinstance(target, str) and target not in STEPS:
        raise ConfigurationError(f"unknown step or preset {target!r}")
    label = target.name if isinstance(target, Preset) else target
    args = [(target, bounds, seed, i, override) for i in range(trials)]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_trial_star, args))
    else:
        results = [_trial_star(a) for a in args]
    return Report(label, sorted(results, key=lambda r: r.index))


@dataclass
class SampledInstance:
    instance: object
    preimage: FactoredInstance
    params: dict


DISTRIBUTIONS = {"D_OV": OV, "D_XOR": XOR, "D_SUM": SUM}


def sample_distribution(name: str, N: int, K: int, b: int, g: int, rng: np.random.Generator) -> SampledInstance:
    """Ground a uniform factored instance with k = K/g lists of n = Ng/(2^b K) vectors."""
    key = name.upper() if name.upper().startswith("D_") else "D_" + name.upper()
    if key not in DISTRIBUTIONS:
        raise ArgumentError(f"unknown distribution {name!r}")
    if g < 1 or b < 1 or K % g:
        raise ArgumentError("g must divide K")
    k = K // g
    if k < 2:
        raise ArgumentError("K/g must be at least 2")
    if (N * g) % ((1 << b) * K):
        raise ArgumentError(f"N*g = {N * g} is not a multiple of 2^b*K = {(1 << b) * K}")
    n = N * g // ((1 << b) * K)
    if n < 1:
        raise ArgumentError("derived list size is zero")
    pre = sample_uniform_factored(k, n, g, b, DISTRIBUTIONS[key], rng)
    out = ground.ground(ground.pad_to_power_of_two(pre))
    return SampledInstance(out, pre, {"N": N, "K": K, "b": b, "g": g, "k": k, "n": n})
