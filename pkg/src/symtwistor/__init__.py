"""Exact symbolic toolkit for a supersymmetric Dirac/twistor system in two
commuting and one anticommuting-flavored variable.

Everything computes over Gaussian rationals, so every identity check is an
exact equality, never a float comparison.
"""

from .exactnum import G, GaussianRational, I, MINUS_I, ONE, Rational, ZERO
from .weyl import (
    BasisMismatchError,
    BasisTag,
    WeylOperator,
    apply,
    change_basis,
    commutator,
    compose,
)
from .spinor import (
    EVEN,
    MIXED,
    ODD,
    QPoly,
    SPINOR_SCHEMA_VERSION,
    Spinor,
    spinor_change_basis,
)
from .parsing import OperatorSyntaxError, UnknownSymbolError, parse_operator
from .operators import (
    TwistorPair,
    build_casimir,
    build_ds,
    build_ds_squared,
    build_euler,
    build_rho_h,
    build_rho_x,
    build_rho_y,
    build_ts_component2,
    build_ts_full,
    build_ts_reduced,
    build_xs,
    named_operator,
    operator_names,
)
from .combinatorics import (
    a_table,
    a_table_from_power,
    stirling,
    stirling_from_power,
    stirling_tilde,
    stirling_tilde_collapse,
    xs_power_expand,
)
from .kernels import (
    HoweComponent,
    KernelFamily,
    NonHomogeneousError,
    ParityMismatchError,
    RecursionKind,
    exclusion_formula,
    holomorphic_family_check,
    holomorphic_family_member,
    howe_decompose,
    kernel_linear_solve,
    ladder_constant,
    monogenic_minus,
    monogenic_plus,
    operator_for_kind,
    scalar_action,
    solve_recursion,
    twistor_kernel_basis,
    verify_exclusion,
    verify_minus_exclusion,
)
from .verify import (
    Check,
    CheckResult,
    REPORT_SCHEMA_VERSION,
    VerificationReport,
    all_checks,
    run_suite,
    suite_names,
)

__version__ = "0.1.0"

__all__ = [
    "G",
    "GaussianRational",
    "I",
    "MINUS_I",
    "ONE",
    "Rational",
    "ZERO",
    "BasisMismatchError",
    "BasisTag",
    "WeylOperator",
    "apply",
    "change_basis",
    "commutator",
    "compose",
    "EVEN",
    "MIXED",
    "ODD",
    "QPoly",
    "SPINOR_SCHEMA_VERSION",
    "Spinor",
    "spinor_change_basis",
    "OperatorSyntaxError",
    "UnknownSymbolError",
    "parse_operator",
    "TwistorPair",
    "build_casimir",
    "build_ds",
    "build_ds_squared",
    "build_euler",
    "build_rho_h",
    "build_rho_x",
    "build_rho_y",
    "build_ts_component2",
    "build_ts_full",
    "build_ts_reduced",
    "build_xs",
    "named_operator",
    "operator_names",
    "a_table",
    "a_table_from_power",
    "stirling",
    "stirling_from_power",
    "stirling_tilde",
    "stirling_tilde_collapse",
    "xs_power_expand",
    "HoweComponent",
    "KernelFamily",
    "NonHomogeneousError",
    "ParityMismatchError",
    "RecursionKind",
    "exclusion_formula",
    "holomorphic_family_check",
    "holomorphic_family_member",
    "howe_decompose",
    "kernel_linear_solve",
    "ladder_constant",
    "monogenic_minus",
    "monogenic_plus",
    "operator_for_kind",
    "scalar_action",
    "solve_recursion",
    "twistor_kernel_basis",
    "verify_exclusion",
    "verify_minus_exclusion",
    "Check",
    "CheckResult",
    "REPORT_SCHEMA_VERSION",
    "VerificationReport",
    "all_checks",
    "run_suite",
    "suite_names",
    "__version__",
]
