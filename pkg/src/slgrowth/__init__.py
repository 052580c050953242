"""Exact-arithmetic laboratory for product growth in SL_n(F_p).

Finite special linear groups over prime fields, word-ball expansion and
tripling statistics, maximal tori through centralizers of regular
semisimple elements, shifted-trace invariants with dyadic wealth bins,
the Cayley-Hamilton coefficient map and its fiber bounds, generalized
Vandermonde identities, and additive energy of trace sets.  Everything
is integer arithmetic mod p; floats appear only in final ratios.
"""

from ._version import __version__
from .errors import (
    BudgetExceeded,
    FiberBoundViolation,
    GenerationFailed,
    Indeterminate,
    InvalidWitness,
    NoBins,
    NotInGroup,
    SingularMatrix,
    SlgrowthError,
    UnsupportedTorus,
)
from .field import PrimeField, is_prime
from .matrices import Mat, SemisimplicityClass, SpecialLinear
from .growth import (
    Budget,
    DEFAULT_BUDGET,
    DEFAULT_MAX_ELEMENTS,
    ElementSet,
    GrowthReport,
    full_group,
    generated_closure,
    generates,
    growth_scan,
    standard_generators,
    symmetrized,
    triple_product,
    word_ball,
)
from .vandermonde import (
    cyclic_product_coordinates,
    elementary_symmetric,
    generalized_vandermonde_det,
    power_matrix_rows,
    vandermonde_product,
    verify_vander_identity,
)
from .torus import (
    CharacterSpec,
    TorusHandle,
    TorusReport,
    centralizer_torus,
    character_kernel_members,
    count_semisimple_classes,
    eigenvector_basis,
    rich_torus_scan,
    torus_order_and_split,
)
from .tracelab import (
    ClassTuple,
    FVector,
    TraceTuple,
    WealthBin,
    bin_spread,
    class_tuple,
    dyadic_bins,
    f_of,
    f_relation_holds,
    fiber_bound_check,
    fiber_exponent,
    lindep_check,
    popular_tuple,
    trace_tuple,
    wealth,
)
from .energy import (
    FiberFamily,
    ScalarSet,
    VectorSet,
    VitalInstance,
    VitalReport,
    additive_energy,
    assemble_vital_instance,
    dilate,
    vital_diagnostics,
)

__all__ = [
    "__version__",
    "BudgetExceeded",
    "FiberBoundViolation",
    "GenerationFailed",
    "Indeterminate",
    "InvalidWitness",
    "NoBins",
    "NotInGroup",
    "SingularMatrix",
    "SlgrowthError",
    "UnsupportedTorus",
    "PrimeField",
    "is_prime",
    "Mat",
    "SemisimplicityClass",
    "SpecialLinear",
    "Budget",
    "DEFAULT_BUDGET",
    "DEFAULT_MAX_ELEMENTS",
    "ElementSet",
    "GrowthReport",
    "full_group",
    "generated_closure",
    "generates",
    "growth_scan",
    "standard_generators",
    "symmetrized",
    "triple_product",
    "word_ball",
    "cyclic_product_coordinates",
    "elementary_symmetric",
    "generalized_vandermonde_det",
    "power_matrix_rows",
    "vandermonde_product",
    "verify_vander_identity",
    "CharacterSpec",
    "TorusHandle",
    "TorusReport",
    "centralizer_torus",
    "character_kernel_members",
    "count_semisimple_classes",
    "eigenvector_basis",
    "rich_torus_scan",
    "torus_order_and_split",
    "ClassTuple",
    "FVector",
    "TraceTuple",
    "WealthBin",
    "bin_spread",
    "class_tuple",
    "dyadic_bins",
    "f_of",
    "f_relation_holds",
    "fiber_bound_check",
    "fiber_exponent",
    "lindep_check",
    "popular_tuple",
    "trace_tuple",
    "wealth",
    "FiberFamily",
    "ScalarSet",
    "VectorSet",
    "VitalInstance",
    "VitalReport",
    "additive_energy",
    "assemble_vital_instance",
    "dilate",
    "vital_diagnostics",
]
