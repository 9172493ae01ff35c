"""Kostant partition function, weight multiplicities and tensor product
coefficients for the classical Lie algebras, computed through
Jeffrey-Kirwan residues over maximal proper nested sets."""

from .arith import MultiPoly, QuasiPolynomial
from .errors import InternalError, KostantError, SingularVectorError, TruncationError, UsageError
from .multiplicity import (
    freudenthal_multiplicity,
    tensor_coefficient,
    tensor_oracle,
    tensor_quasipoly,
    tensor_stretched,
    weight_multiplicity,
    weight_multiplicity_quasipoly,
    weight_multiplicity_stretched,
    weyl_dimension,
)
from .nested import count_chambers, irreducible_subsets, maximal_proper_nested_sets, regular_perturbation, select_mpns
from .partition import kostant_partition, kostant_partition_dp, kostant_partition_quasipoly, torus_set, torus_subgroup
from .rootsys import RootSystem, build_root_system, from_cano_to_funda, from_funda_to_cano

__all__ = [
    "InternalError",
    "KostantError",
    "MultiPoly",
    "QuasiPolynomial",
    "RootSystem",
    "SingularVectorError",
    "TruncationError",
    "UsageError",
    "build_root_system",
    "count_chambers",
    "freudenthal_multiplicity",
    "from_cano_to_funda",
    "from_funda_to_cano",
    "irreducible_subsets",
    "kostant_partition",
    "kostant_partition_dp",
    "kostant_partition_quasipoly",
    "maximal_proper_nested_sets",
    "regular_perturbation",
    "select_mpns",
    "tensor_coefficient",
    "tensor_oracle",
    "tensor_quasipoly",
    "tensor_stretched",
    "torus_set",
    "torus_subgroup",
    "weight_multiplicity",
    "weight_multiplicity_quasipoly",
    "weight_multiplicity_stretched",
    "weyl_dimension",
]
