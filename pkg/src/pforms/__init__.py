"""Exact computer algebra for twisted rational-function composition over
finite fields: the star monomorphism, the composition monoid and its group
of invertible elements, degree pairs valued in Z[q^(1/n)], Dobbertin's
forms with explicit inverses, and a univariate permutation-polynomial
pipeline, all with symbolic (never numeric) arithmetic."""

from .core import (
    DeltaPair,
    MembershipReport,
    OrderResult,
    compose,
    delta,
    delta_compose_pairs,
    delta_of_composition,
    d_of,
    iterate,
    membership_necessary_checks,
    order,
    star,
    star_orbit,
    verify_inverse,
)
from .degrees import (
    DegCtx,
    DegElem,
    NEG_INFINITY,
    POS_INFINITY,
    UnitSystem,
    deg_ctx,
)
from .dobbertin import (
    PermReport,
    derive_permutation_polynomial,
    dobbertin_form,
    dobbertin_form_inverse,
    iterate_delta_closed_form,
    sign_sequences,
    uniform_representation,
)
from .exprs import parse, poly_string, ratfunc_string
from .ffield import FFElem, FieldCtx, ff_from_q, ff_make
from .groups import (
    INCONCLUSIVE,
    INFINITE,
    GeneratorTable,
    Moebius,
    RationalMonomial,
    SearchResult,
    UnitPair,
    Word,
    alternating_word_delta,
    central_scalars,
    centralizer_form_check,
    certify_infinite_order,
    classify_coset,
    commutes,
    coset_representatives,
    embed,
    expand_word,
    is_invertible_monomial,
    monomial_to_degree,
    pair_system,
    relation_search,
    unit_to_monomial,
)
from .poly import MPoly, PFormCtx, RatFunc, ratfunc_from_laurent

__version__ = "0.1.0"
