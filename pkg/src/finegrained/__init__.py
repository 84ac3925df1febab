"""Exact fine-grained reductions for counting and parity versions of OV, XOR,
SUM, clique and CNF-SAT, with brute-force oracles to check them."""

__version__ = "0.1.0"

from .brute import count_cliques, count_instance, count_ov, count_sat, count_sum, count_xor, parity_of
from .clique import clique_to_ov, clique_to_sum, clique_to_xor, sample_gnp
from .decision import decision_from_parity
from .errors import (
    ArgumentError,
    CapacityError,
    ConfigurationError,
    OracleError,
    ReductionError,
    StructuralError,
)
from .factored import (
    FactoredInstance,
    FactoredShape,
    FactoredVector,
    IndicatorEncoding,
    Predicate,
    count_factored,
    decode_bits,
    encode_bits,
    parity_factored,
    polynomial_count,
    sample_uniform_factored,
    satisfies,
)
from .ground import ground_ov, ground_sum, ground_xor
from .hashing import hash_sum_instance, hash_xor_instance
from .instances import CnfFormula, Graph, OvInstance, SumInstance, XorInstance
from .lift import factor_ov, factor_sum_blockwise, factor_xor
from .sat_bridge import fov_to_sat, sample_dov_chain, sample_dsat, sat_to_ov
from .selfred import (
    NoisyOracle,
    Oracle,
    PolynomialSpec,
    amplify,
    bit_slice_call,
    correct_integer,
    correct_parity,
    dense_ov_selfreduce,
)
from .xfactor import generic_to_ov, generic_to_sum, generic_to_xor, ov_to_sum_padded, xor_to_sum_padded

__all__ = [
    "ArgumentError",
    "CapacityError",
    "CnfFormula",
    "ConfigurationError",
    "FactoredInstance",
    "FactoredShape",
    "FactoredVector",
    "Graph",
    "IndicatorEncoding",
    "NoisyOracle",
    "Oracle",
    "OracleError",
    "OvInstance",
    "PolynomialSpec",
    "Predicate",
    "ReductionError",
    "StructuralError",
    "SumInstance",
    "XorInstance",
    "amplify",
    "bit_slice_call",
    "clique_to_ov",
    "clique_to_sum",
    "clique_to_xor",
    "correct_integer",
    "correct_parity",
    "count_cliques",
    "count_factored",
    "count_instance",
    "count_ov",
    "count_sat",
    "count_sum",
    "count_xor",
    "decision_from_parity",
    "decode_bits",
    "dense_ov_selfreduce",
    "encode_bits",
    "factor_ov",
    "factor_sum_blockwise",
    "factor_xor",
    "fov_to_sat",
    "generic_to_ov",
    "generic_to_sum",
    "generic_to_xor",
    "ground_ov",
    "ground_sum",
    "ground_xor",
    "hash_sum_instance",
    "hash_xor_instance",
    "ov_to_sum_padded",
    "parity_factored",
    "parity_of",
    "polynomial_count",
    "sample_dov_chain",
    "sample_dsat",
    "sample_gnp",
    "sample_uniform_factored",
    "sat_to_ov",
    "satisfies",
    "xor_to_sum_padded",
]
