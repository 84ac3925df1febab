"""Command-line entry point.  Every subcommand exits 0 iff its checks pass."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .brute import count_cliques, count_instance
from .errors import ReductionError
from .hashing import count_sum_mod
from .instances import Graph, SumInstance
from .pipeline import (
    PRESETS,
    STEPS,
    Bounds,
    ReductionStep,
    kind_of,
    preset,
    run_chain,
    sample_distribution,
    verify,
)
from .serialize import dumps, from_json, read_instances, to_dimacs, to_edge_list


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read(path: str) -> list:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return read_instances(text)


def _params(pairs) -> dict:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise ReductionError(f"parameter {pair!r} is not key=value")
        out[key] = int(value)
    return out


def _write_instance(inst, fmt: str, out):
    if fmt == "dimacs":
        out.write(to_dimacs(inst))
    elif fmt == "edges":
        out.write(to_edge_list(inst))
    else:
        out.write(dumps(inst) + "\n")


def cmd_sample(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    for _ in range(args.count):
        s = sample_distribution(args.dist, args.N, args.K, args.b, args.g, rng)
        _write_instance(s.instance, "json", out)
    return 0


def cmd_reduce(args, out) -> int:
    step = ReductionStep(args.step, _params(args.params))
    ok = True
    for idx, inst in enumerate(_read(args.input)):
        result, log = run_chain([step], inst, seed=args.seed + idx, check=args.check)
        _write_instance(result, args.format, out)
        if args.check:
            check = log[0]["check"]
            ok &= check["ok"]
            _emit({"check": check}, sys.stderr)
    return 0 if ok else 1


def cmd_solve(args, out) -> int:
    for inst in _read(args.file):
        if isinstance(inst, Graph):
            if args.clique_k is None:
                raise ReductionError("counting cliques needs --clique-k")
            count = count_cliques(inst, args.clique_k)
        elif args.modulus is not None:
            if not isinstance(inst, SumInstance):
                raise ReductionError("--modulus applies to sum instances")
            count = count_sum_mod(inst, args.modulus)
        else:
            count = count_instance(inst)
        value = count if args.mode == "count" else count & 1
        _emit({"kind": kind_of(inst), args.mode: str(value)}, out)
    return 0


def cmd_verify(args, out) -> int:
    bounds = Bounds(max_n=args.max_n, max_k=args.max_k)
    if args.preset:
        targets = [args.preset]
    elif args.target == "all":
        targets = list(STEPS) + list(PRESETS)
    elif args.target == "chain":
        targets = list(PRESETS)
    else:
        targets = [args.target]
    ok = True
    for target in targets:
        report = verify(target, trials=args.trials, bounds=bounds, seed=args.seed, jobs=args.jobs)
        ok &= report.passed
        _emit(report.to_json(), out)
    return 0 if ok else 1


def load_plan(path: str) -> dict:
    plan = json.loads(Path(path).read_text())
    if "preset" in plan:
        plan.setdefault("steps", [s.to_json() for s in preset(plan["preset"]).steps])
    if "input_file" in plan:
        base = Path(path).parent
        plan["inputs"] = _read(str(base / plan["input_file"]))
    elif "input" in plan:
        plan["inputs"] = [from_json(plan["input"])]
    return plan


def cmd_chain(args, out) -> int:
    if args.plan:
        plan = load_plan(args.plan)
    else:
        plan = {"steps": [s.to_json() for s in preset(args.preset).steps]}
    steps = [ReductionStep.from_json(s) for s in plan["steps"]]
    inputs = _read(args.input) if args.input else plan.get("inputs")
    seed = args.seed if args.seed is not None else int(plan.get("seed", 0))
    if not inputs:
        if args.preset or "preset" in plan:
            name = args.preset or plan["preset"]
            inputs = [preset(name).random_input(np.random.default_rng(seed))]
        else:
            raise ReductionError("the plan has no input; pass --input")
    ok = True
    for idx, inst in enumerate(inputs):
        result, log = run_chain(steps, inst, seed=seed + idx, check=args.check)
        if args.check:
            ok &= all(e["check"]["ok"] for e in log)
        _emit({"log": log, "output": json.loads(dumps(result))}, out)
    return 0 if ok else 1


def cmd_presets(args, out) -> int:
    for p in PRESETS.values():
        _emit(p.to_json(), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finegrained", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw instances from D_OV, D_XOR or D_SUM")
    p.add_argument("dist", choices=["D_OV", "D_XOR", "D_SUM", "ov", "xor", "sum"])
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("reduce", help="apply one reduction step")
    p.add_argument("step", choices=sorted(STEPS))
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.add_argument("--input", default="-")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true", help="brute-force both sides")
    p.add_argument("--format", choices=["json", "dimacs", "edges"], default="json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="exact count or parity by enumeration")
    p.add_argument("mode", choices=["count", "parity"])
    p.add_argument("file")
    p.add_argument("--clique-k", type=int)
    p.add_argument("--modulus", type=int, help="count sum tuples divisible by this modulus")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="randomized brute-force check of a step or chain")
    p.add_argument("target", nargs="?", default="chain", help="step name, preset name, 'chain' or 'all'")
    p.add_argument("--preset")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="run a reduction plan with provenance")
    p.add_argument("plan", nargs="?")
    p.add_argument("--preset")
    p.add_argument("--input")
    p.add_argument("--seed", type=int)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("presets", help="list preset parameter sets")
    p.set_defaults(func=cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "chain" and not (args.plan or args.preset):
        parser.error("chain needs a plan file or --preset")
    try:
        return args.func(args, sys.stdout)
    except (ReductionError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
