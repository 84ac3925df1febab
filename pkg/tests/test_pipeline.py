import numpy as np
import pytest

from finegrained.errors import ArgumentError, ConfigurationError
from finegrained.factored import sample_uniform_factored
from finegrained.instances import OvInstance
from finegrained.pipeline import (
    PRESETS,
    STEPS,
    Bounds,
    ReductionStep,
    chain_kinds,
    kind_of,
    preset,
    run_chain,
    sample_distribution,
    step_rng,
    verify,
)
from finegrained.serialize import instance_hash, loads, dumps


def small_ov():
    return OvInstance([[(1, 0), (0, 1)], [(1, 1), (0, 0)]], 2)


def test_identity_chain():
    inst = small_ov()
    out, log = run_chain([ReductionStep("identity")], inst, check=True)
    assert out == inst
    assert log[0]["input_hash"] == log[0]["output_hash"] == instance_hash(inst)
    assert log[0]["check"]["ok"]


def test_lift_ground_chain_preserves_count():
    steps = [ReductionStep("factor_ov", {"b": 1, "g": 2}), ReductionStep("ground_ov")]
    out, log = run_chain(steps, small_ov(), check=True)
    assert all(e["check"]["ok"] for e in log)
    assert kind_of(out) == "ov"
    assert [e["seed"]["spawn_key"] for e in log] == [[0], [1]]


def test_presets_resolve():
    for name, p in PRESETS.items():
        source_kind = {"eth": "cnf"}.get(p.source, p.source)
        kinds = chain_kinds(list(p.steps), source_kind)
        assert kinds[-1] == p.target
    assert preset("table2-ov-from-eth").K == 4
    with pytest.raises(ConfigurationError):
        preset("table9-nothing")


def test_bad_steps_rejected():
    with pytest.raises(ConfigurationError):
        ReductionStep("no_such_step")
    with pytest.raises(ConfigurationError):
        ReductionStep("factor_ov", {"b": 1})
    with pytest.raises(ConfigurationError):
        run_chain([ReductionStep("ground_xor")], small_ov())


def test_runs_are_deterministic_and_hash_sensitive():
    inst = OvInstance([[(1, 0, 1)], [(0, 1, 0)]], 3)
    step = [ReductionStep("pad_dimension", {"d": 4})]
    a, log_a = run_chain(step, inst, seed=3)
    b, log_b = run_chain(step, inst, seed=3)
    assert a == b and log_a == log_b
    other = OvInstance([[(1, 0, 0)], [(0, 1, 0)]], 3)
    assert instance_hash(other) != instance_hash(inst)
    assert loads(dumps(inst)) == inst
    x = step_rng(1, 0).integers(0, 1 << 30, 4)
    y = step_rng(1, 1).integers(0, 1 << 30, 4)
    assert not np.array_equal(x, y)


def test_zero_trial_report():
    report = verify("identity", trials=0)
    assert report.passed and report.to_json()["trials"] == 0


@pytest.mark.parametrize("target", sorted(STEPS) + sorted(PRESETS))
def test_every_step_and_preset_verifies(target):
    report = verify(target, trials=15, bounds=Bounds(max_n=3), seed=1)
    assert report.passed, report.to_json()["failures"][:2]


def test_broken_override_is_reported():
    def flip_first_bit(inst, params, rng):
        lists = [list(lst) for lst in inst.lists]
        v = lists[0][0]
        lists[0][0] = (1 - v[0],) + tuple(v[1:])
        return inst.with_lists(lists)

    report = verify("identity", trials=200, bounds=Bounds(max_n=3), seed=2, override=lambda i, p, r: flip_first_bit(i, p, r) if kind_of(i) == "ov" else i)
    assert not report.passed
    assert report.failures[0].counterexample["input"]


def test_sample_distribution():
    s = sample_distribution("D_OV", 16, 4, 1, 2, np.random.default_rng(0))
    assert s.params["n"] == 4 and s.params["k"] == 2
    assert len(s.instance.lists) == 4
    again = sample_distribution("D_OV", 16, 4, 1, 2, np.random.default_rng(0))
    assert again.instance == s.instance
    with pytest.raises(ArgumentError):
        sample_distribution("D_OV", 15, 4, 1, 2, np.random.default_rng(0))
    with pytest.raises(ArgumentError):
        sample_distribution("D_OV", 16, 4, 1, 3, np.random.default_rng(0))
