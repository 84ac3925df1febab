import numpy as np
import pytest

from finegrained.brute import count_ov, count_sat
from finegrained.errors import ArgumentError, StructuralError
from finegrained.factored import FactoredInstance, FactoredVector, count_factored
from finegrained.instances import CnfFormula
from finegrained.sat_bridge import (
    fov_to_sat,
    sample_dov_chain,
    sample_dsat,
    sat_to_ov,
    split_padding,
    variable_count,
)
from finegrained.serialize import from_dimacs, to_dimacs
from oracles import naive_sat


def test_unit_clauses_split():
    f = CnfFormula(4, [[1], [-3]])
    inst = sat_to_ov(f, 2)
    assert inst.sizes == (4, 4)
    assert count_ov(inst) == naive_sat(4, f.clauses) == 4


def test_padding_scales_count():
    f = CnfFormula(3, [[1, 2], [-3]])
    assert split_padding(3, 2) == 1
    assert count_ov(sat_to_ov(f, 2)) == 2 * naive_sat(3, f.clauses)


def test_empty_formula():
    inst = sat_to_ov(CnfFormula(4, []), 2)
    assert inst.dim == 1
    assert count_ov(inst) == 16
    with pytest.raises(ArgumentError):
        sat_to_ov(CnfFormula(4, []), 1)


def test_factored_to_sat_sizes():
    fv = FactoredVector.from_strings
    inst = FactoredInstance([[fv([["0"]]), fv([["1"]])], [fv([["0", "1"]]), fv([["1"]])]], 1, 1, "OV")
    f = fov_to_sat(inst)
    assert f.var_count == 4 == variable_count(2, 2, 1, 1)
    assert f.clause_count <= 9
    assert count_sat(f) == count_factored(inst)


def test_full_sets_give_no_exclusions():
    inst = FactoredInstance([[FactoredVector(1, ((0, 1),))]] * 2, 1, 1, "OV")
    f = fov_to_sat(inst)
    assert f.clause_count == 1
    assert count_sat(f) == count_factored(inst) == 3


def test_rejects_other_predicates():
    inst = FactoredInstance([[FactoredVector(1, ((0,),))]] * 2, 1, 1, "XOR")
    with pytest.raises(StructuralError):
        fov_to_sat(inst)


def test_dimacs_round_trip():
    f = sample_dsat(2, 1, 2, 2, np.random.default_rng(0))
    assert from_dimacs(to_dimacs(f)) == f


def test_samplers():
    rng = np.random.default_rng(1)
    f = sample_dsat(4, 1, 1, 3, rng)
    assert f.var_count == variable_count(3, 4, 1, 1)
    chain = sample_dov_chain(6, 1, 1, 3, 2, rng)
    assert chain.k == 2
    with pytest.raises(ArgumentError):
        sample_dov_chain(7, 1, 1, 3, 2, rng)
