"""Multiple harmonic star sums, zeta star values and their expansion into
alternating Euler sums, with exact and high-precision verification."""
from .exact import (
    big_delta,
    binom_ratio,
    binom_ratios,
    gf_product_form,
    h_star,
    h_strict,
    h_strict_table,
    sharp_row,
    sharp_sum,
    small_delta,
)
from .expander import (
    ChainSum,
    EulerCombination,
    Link,
    build_chain,
    canonical_shape,
    combination_equal,
    evaluate_chain,
    evaluate_truncated,
    expand,
    expand_chain,
    two_one_reference,
    two_one_shape,
    twos_one_reference,
    twos_three_reference,
)
from .identities import (
    CheckReport,
    c4_rhs,
    check_lemma21,
    check_lemma22,
    check_recurrence,
    t1_rhs,
    verify_c4,
    verify_t1,
    verify_t1_variant,
)
from .index import (
    DivergentIndex,
    InvalidIndex,
    ParseError,
    SignedIndex,
    TwoBlockIndex,
    compositions,
    delta_profile,
    detect_two_block,
    parse_index,
    two_block_grid,
)
from .numeric import (
    EvalResult,
    NumericReport,
    combination_numeric,
    euler_numeric,
    star_numeric,
    verify_closed_forms,
    verify_expansion_numeric,
    verify_gf_numeric,
    verify_sine_product,
    verify_zagier,
    zeta_single,
)

__version__ = "0.1.0"
