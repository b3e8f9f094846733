"""Exact differential splitting of quaternion algebras over Q(t)."""

from .arith import Poly, RatFunc
from .certio import emit_certificate_json, load_certificate
from .criteria import (finite_split_search, finite_split_witness_check, nonsplit_algebraic_check,
                       norm_constant_check, standard_analyze)
from .engine import Hint, SplitCertificate, construct_certificate, standardize_from_split, verify_certificate
from .odesolve import logderiv_multiple, riccati_rational_solutions, solve_linear_radical
from .parse import parse_expr
from .problem import ProblemSpec, load_problem
from .quaternion import DerivationSpec, QuatAlgebra, build_riccati
from .tower import DiffBase, Tower

__version__ = "0.1.0"

__all__ = [
    "Poly", "RatFunc", "DiffBase", "Tower", "QuatAlgebra", "DerivationSpec", "build_riccati",
    "logderiv_multiple", "solve_linear_radical", "riccati_rational_solutions",
    "Hint", "SplitCertificate", "construct_certificate", "verify_certificate", "standardize_from_split",
    "finite_split_search", "finite_split_witness_check", "nonsplit_algebraic_check",
    "norm_constant_check", "standard_analyze", "parse_expr", "ProblemSpec", "load_problem",
    "emit_certificate_json", "load_certificate",
]
