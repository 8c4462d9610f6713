"""Computable web categories for the periplectic Lie superalgebra p(n)."""

from .exact_arith import binom, factorial, format_scalar, scalar
from .evaluation import LinearMap, check_equivariance, eval_generator, evaluate, super_compose, super_tensor
from .superspace import Space, enumerate_basis, normalize_word, pn_act, pn_basis
from .web_terms import (
    Morphism,
    block,
    compose,
    crossing_expand,
    green_dot,
    multi_merge,
    multi_split,
    tensor,
    then,
    xi_term,
)
from .basis import decompose, enumerate_chi, equal, gram_rank, hom_basis, hom_dim
from .relations import SUITES, check_instance, generate_suite, run_suite

__all__ = [
    "binom",
    "factorial",
    "format_scalar",
    "scalar",
    "LinearMap",
    "check_equivariance",
    "eval_generator",
    "evaluate",
    "super_compose",
    "super_tensor",
    "Space",
    "enumerate_basis",
    "normalize_word",
    "pn_act",
    "pn_basis",
    "Morphism",
    "block",
    "compose",
    "crossing_expand",
    "green_dot",
    "multi_merge",
    "multi_split",
    "tensor",
    "then",
    "xi_term",
    "decompose",
    "enumerate_chi",
    "equal",
    "gram_rank",
    "hom_basis",
    "hom_dim",
    "SUITES",
    "check_instance",
    "generate_suite",
    "run_suite",
]

__version__ = "0.1.0"
