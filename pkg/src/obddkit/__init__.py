"""obddkit: simulation and exact width certification for ordered
binary decision diagrams under deterministic, nondeterministic,
probabilistic, and unitary semantics.

The exact backend keeps every amplitude in a decidable scalar tower
(rationals, sqrt(2) powers, and trig factors of rational multiples of
pi), so threshold-0 acceptance is decided by integer congruence rather
than floating-point tolerance.
"""

from .bits import all_inputs, natural_order
from .bounds import (
    FoolingSet,
    SpanWitness,
    WidthCertificate,
    bound_certificates,
    counting_span_prefixes,
    det_min_width_all_orders,
    det_min_width_fixed_order,
    exact_rank,
    hierarchy_report,
    minimal_obdd,
    mod_fooling_pairs,
    nuobdd_lower_bound,
    search_max_fooling_set,
    span_dimension,
    verify_fooling_set,
)
from .compose import CompositionError, complement_accepting, intersection, lift, union
from .constructions import (
    PermEncoding,
    build_and_nobdd,
    build_exact_deterministic,
    build_exact_unitary,
    build_mod,
    build_not_exact,
    build_not_perm,
    encode_t,
)
from .functions import BooleanFunction, distinguishes
from .io import load_program, save_program, save_report
from .kernel import backend_name
from .model import (
    AngleState,
    BasisState,
    BlockDiagMatrix,
    BlockState,
    KronMatrix,
    LeveledProgram,
    Matrix,
    ProductState,
    RationalMatrix,
    RationalState,
    Rotation2,
    Semantics,
    SubsetState,
    make_program,
)
from .scalars import ExactProbability, ExactScalar, InexactArithmeticError
from .semantics import (
    InvalidProgramError,
    RunTrace,
    accepts_nondeterministically,
    computes_function,
    run,
    run_prefix,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AngleState",
    "BasisState",
    "BlockDiagMatrix",
    "BlockState",
    "BooleanFunction",
    "CompositionError",
    "ExactProbability",
    "ExactScalar",
    "FoolingSet",
    "InexactArithmeticError",
    "InvalidProgramError",
    "KronMatrix",
    "LeveledProgram",
    "Matrix",
    "PermEncoding",
    "ProductState",
    "RationalMatrix",
    "RationalState",
    "Rotation2",
    "RunTrace",
    "Semantics",
    "SpanWitness",
    "SubsetState",
    "WidthCertificate",
    "accepts_nondeterministically",
    "all_inputs",
    "backend_name",
    "bound_certificates",
    "build_and_nobdd",
    "build_exact_deterministic",
    "build_exact_unitary",
    "build_mod",
    "build_not_exact",
    "build_not_perm",
    "complement_accepting",
    "computes_function",
    "counting_span_prefixes",
    "det_min_width_all_orders",
    "det_min_width_fixed_order",
    "distinguishes",
    "encode_t",
    "exact_rank",
    "hierarchy_report",
    "intersection",
    "lift",
    "load_program",
    "make_program",
    "minimal_obdd",
    "mod_fooling_pairs",
    "natural_order",
    "nuobdd_lower_bound",
    "run",
    "run_prefix",
    "save_program",
    "save_report",
    "search_max_fooling_set",
    "span_dimension",
    "union",
    "validate",
    "verify_fooling_set",
]
