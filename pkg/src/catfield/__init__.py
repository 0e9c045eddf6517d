"""Exact conditional-information analysis of finite categorical random fields."""

from .errors import FieldError
from .field import (
    DEFAULT_LATTICE_LIMIT,
    UNDEFINED,
    ConditionalTable,
    Event,
    JointField,
    MarginalTable,
    SiteSet,
    build_field,
    conditional,
    cylinder,
    event_conditional,
    event_prob,
    is_positive,
    marginal,
    marginal_lattice,
    omega,
)
from .fixtures import FIXTURE_NAMES, builtin_fixture, uniform8_events
from .infosets import (
    AMBIGUOUS,
    UNStatus,
    coarse_conditional,
    dependence_corollary_check,
    es_family,
    is_sufficient,
    is_uninformative,
    mi_family,
    mi_membership,
    partition_constant_check,
    reduction_family,
    si_family,
)

__version__ = "0.1.0"

__all__ = [
    "AMBIGUOUS",
    "DEFAULT_LATTICE_LIMIT",
    "FIXTURE_NAMES",
    "UNDEFINED",
    "ConditionalTable",
    "Event",
    "FieldError",
    "JointField",
    "MarginalTable",
    "SiteSet",
    "UNStatus",
    "build_field",
    "builtin_fixture",
    "coarse_conditional",
    "conditional",
    "cylinder",
    "dependence_corollary_check",
    "es_family",
    "event_conditional",
    "event_prob",
    "is_positive",
    "is_sufficient",
    "is_uninformative",
    "marginal",
    "marginal_lattice",
    "mi_family",
    "mi_membership",
    "omega",
    "partition_constant_check",
    "reduction_family",
    "si_family",
    "uniform8_events",
]
