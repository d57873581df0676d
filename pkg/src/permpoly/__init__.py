"""Permutation polynomials of the form X^r A(X^(q-1)) over GF(q^2).

Finite field arithmetic, the subgroup criterion on mu_{q+1}, checked
multiplier constructions, characteristic-2 seed families, and a sweep for
sparse examples.
"""

from .construct import (
    ConstructionResult, Lemma2Outcome, Lemma4Params, SeedPermutation, cor3_product,
    cor3_quotient, cor5, lemma2_check, lemma2_condition, lemma4_seed, make_seed, ord2,
    smallest_valid_r,
)
from .errors import (
    ConfigError, InternalInconsistency, InvalidArgument, NotDivisible, PermPolyError,
    PreconditionFailed, RecordParseError, ResourceLimit,
)
from .gf import (
    FieldElement, FieldSpec, fe_add, fe_inv, fe_mul, fe_neg, fe_pow, fe_sub,
    is_irreducible, make_field, quadratic_field,
)
from .mu import MuGroup, enumerate_mu, field_form, is_permutation_bruteforce, lemma1_check, permutes_mu
from .poly import (
    MultiplierSpec, Polynomial, compose_power, evaluate, exact_divide, format_poly,
    multiplier_poly, parse_poly, poly_mul, reduce_mod_field, term_count,
)
from .search import Finding, SearchConfig, SearchStats, canonicalize, run_search, summarize

__version__ = "0.1.0"
