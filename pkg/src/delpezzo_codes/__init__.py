"""Evaluation codes from anticanonical sections of singular del Pezzo surfaces."""

from .code import (
    BudgetExceeded,
    CodeReport,
    GeneratorMatrix,
    analyze,
    analyze_matrix,
    generator_matrix,
    min_distance,
    nq1_weil_serre,
    rank_dimension,
    weight_distribution,
)
from .families import (
    FAMILIES,
    FAMILY_IDS,
    CodeInstance,
    ExcludedFieldOrder,
    UnknownFamily,
    build_instance,
    expected_parameters,
    validate_configuration,
)
from .gf import FieldElement, FiniteField, field_of_order, make_field
from .lattice import ClassGroupReport, class_group_report, smith_normal_form

__all__ = [
    "BudgetExceeded",
    "CodeReport",
    "GeneratorMatrix",
    "analyze",
    "analyze_matrix",
    "generator_matrix",
    "min_distance",
    "nq1_weil_serre",
    "rank_dimension",
    "weight_distribution",
    "FAMILIES",
    "FAMILY_IDS",
    "CodeInstance",
    "ExcludedFieldOrder",
    "UnknownFamily",
    "build_instance",
    "expected_parameters",
    "validate_configuration",
    "FieldElement",
    "FiniteField",
    "field_of_order",
    "make_field",
    "ClassGroupReport",
    "class_group_report",
    "smith_normal_form",
]
