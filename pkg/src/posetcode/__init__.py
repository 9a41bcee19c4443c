"""Evaluation codes in poset metrics: NRT and bottleneck Reed-Solomon codes and their genus-0 AG analogues."""

from .agcodes import (
    INFINITY,
    AGCodeSpec,
    Divisor,
    MdsInequalityParams,
    Place,
    RationalFunction,
    build_ag_code,
    cf_matrix,
    finite,
    l0_basis,
    local_expansion,
    mds_inequality,
    rr_basis,
)
from .codes import (
    BudgetExceeded,
    Code,
    DuplicatePoints,
    ParameterOutOfRange,
    RSCodeSpec,
    WeightEnumerator,
    build_code,
    compare_metrics,
    constrained_basis,
    encode,
    min_distance,
    singleton_report,
    weight_enumerator,
)
from .gf import FieldElement, FieldSpec, field_new, parse_field
from .poly import Polynomial, hyperderivative, vanishing_order
from .poset import (
    BottleneckShape,
    MatrixWord,
    Poset,
    bottleneck,
    bottleneck_weight,
    chain_union,
    nrt_weight,
    p_weight,
)

__version__ = "0.1.0"

__all__ = [
    "AGCodeSpec",
    "BottleneckShape",
    "BudgetExceeded",
    "Code",
    "Divisor",
    "DuplicatePoints",
    "FieldElement",
    "FieldSpec",
    "INFINITY",
    "MatrixWord",
    "MdsInequalityParams",
    "ParameterOutOfRange",
    "Place",
    "Polynomial",
    "Poset",
    "RSCodeSpec",
    "RationalFunction",
    "WeightEnumerator",
    "bottleneck",
    "bottleneck_weight",
    "build_ag_code",
    "build_code",
    "cf_matrix",
    "chain_union",
    "compare_metrics",
    "constrained_basis",
    "encode",
    "field_new",
    "finite",
    "hyperderivative",
    "l0_basis",
    "local_expansion",
    "mds_inequality",
    "min_distance",
    "nrt_weight",
    "p_weight",
    "parse_field",
    "rr_basis",
    "singleton_report",
    "vanishing_order",
    "weight_enumerator",
]
