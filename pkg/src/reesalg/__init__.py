"""Exact toolkit for Rees algebras of modules M ⊆ F over polynomial rings."""
from .arith import CoefField, Polynomial, PolyRing, poly_arith, poly_parse
from .errors import (
    GuardExceeded,
    InvalidCertificateError,
    NotFiniteLengthError,
    NotMPrimaryError,
    ParseError,
    PreconditionError,
    RankMismatchError,
    ReesError,
    RingMismatchError,
    UnsupportedError,
    ZeroQuotientError,
)
from .gb import (
    FreeModuleElement,
    Ideal,
    Submodule,
    express,
    groebner_basis,
    ideal_power,
    is_m_primary,
    membership,
    quotient_dimension,
)
from .iclose import (
    GradedTarget,
    IdealTarget,
    IntegralCertificate,
    MonomialIdeal,
    NewtonPolyhedron,
    closure_equal,
    lift_certificate,
    newton_closure,
    np_member,
    verify_certificate,
)
from .modalg import (
    Guards,
    LinearModule,
    SymPowerBasis,
    check_detadj,
    graded_product,
    maximal_minors,
    minors_ideal_of_sym_power,
    normalize_basis,
    sym_power,
    t1_coefficient_check,
)
from .theorems import Extra, check_bv, check_fingen_window, rees_gap, rees_gap_for_module, staircase

__version__ = "0.1.0"

__all__ = [
    "CoefField",
    "Extra",
    "FreeModuleElement",
    "GradedTarget",
    "GuardExceeded",
    "Guards",
    "Ideal",
    "IdealTarget",
    "IntegralCertificate",
    "InvalidCertificateError",
    "LinearModule",
    "MonomialIdeal",
    "NewtonPolyhedron",
    "NotFiniteLengthError",
    "NotMPrimaryError",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "PreconditionError",
    "RankMismatchError",
    "ReesError",
    "RingMismatchError",
    "Submodule",
    "SymPowerBasis",
    "UnsupportedError",
    "ZeroQuotientError",
    "check_bv",
    "check_detadj",
    "check_fingen_window",
    "closure_equal",
    "express",
    "graded_product",
    "groebner_basis",
    "ideal_power",
    "is_m_primary",
    "lift_certificate",
    "maximal_minors",
    "membership",
    "minors_ideal_of_sym_power",
    "newton_closure",
    "normalize_basis",
    "np_member",
    "poly_arith",
    "poly_parse",
    "quotient_dimension",
    "rees_gap",
    "rees_gap_for_module",
    "staircase",
    "sym_power",
    "t1_coefficient_check",
    "verify_certificate",
]
