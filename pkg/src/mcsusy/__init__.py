"""Exact Moyal-Clifford supersymmetric quantum mechanics on 4D phase space.

Phase-space functions are polynomials (optionally times the vacuum Gaussian)
over an exact field of complex multiquadratic numbers. Everything from the
star product up to the Jaynes-Cummings examples is computed symbolically, so
identities are checked at exact zero residual.
"""
from .clifford import CliffordElement, blade, generator, witt_basis
from .errors import (
    BadExpression,
    BadKArgument,
    ConditionViolated,
    DivergentIntegral,
    EnvelopeUnsupported,
    HbarFixedMode,
    IndexOutOfRange,
    MCError,
    ModeMismatch,
    NonTerminatingStar,
    ParseError,
    UnknownKey,
    UnsupportedK,
    VacuumSquareOutsideIntegral,
)
from .field import SQRT2, ExactScalar, I, Number
from .jc import (
    JCSystem,
    eigenvalue,
    laguerre_wigner,
    make_example,
    spectrum,
    vacuum_wigner,
    verify_spectrum,
    wigner_function,
    wigner_state,
)
from .mc import MCElement, Spinor, dagger, is_star_eigen, mc_mul
from .parser import parse_expression
from .star import (
    PhaseSpaceFunction,
    anti_moyal_bracket,
    classical_limit,
    integrate,
    leading_order,
    moyal_bracket,
    moyal_star,
    poisson_bracket,
    variables,
)
from .susy import Report, SusySystem, build_system, check_conditions, full_report

__version__ = "0.1.0"

__all__ = [
    "SQRT2",
    "BadExpression",
    "BadKArgument",
    "CliffordElement",
    "ConditionViolated",
    "DivergentIntegral",
    "EnvelopeUnsupported",
    "ExactScalar",
    "HbarFixedMode",
    "I",
    "IndexOutOfRange",
    "JCSystem",
    "MCElement",
    "MCError",
    "ModeMismatch",
    "NonTerminatingStar",
    "Number",
    "ParseError",
    "PhaseSpaceFunction",
    "Report",
    "Spinor",
    "SusySystem",
    "UnknownKey",
    "UnsupportedK",
    "VacuumSquareOutsideIntegral",
    "anti_moyal_bracket",
    "blade",
    "build_system",
    "check_conditions",
    "classical_limit",
    "dagger",
    "eigenvalue",
    "full_report",
    "generator",
    "integrate",
    "is_star_eigen",
    "laguerre_wigner",
    "leading_order",
    "make_example",
    "mc_mul",
    "moyal_bracket",
    "moyal_star",
    "parse_expression",
    "poisson_bracket",
    "spectrum",
    "vacuum_wigner",
    "variables",
    "verify_spectrum",
    "wigner_function",
    "wigner_state",
    "witt_basis",
]
