"""Exact construction and verification of poly-Genocchi type families."""

from .combinatorics import (
    StirlingTable,
    binomial,
    compositions,
    falling_factorial_poly,
    falling_factorial_value,
    multinomial,
    rising_factorial_poly,
    rising_factorial_value,
    stirling1_signed,
    stirling2,
)
from .errors import (
    CompositionError,
    ConfigError,
    DivisionByNonUnit,
    GeomError,
    PartitionError,
    PolyGenocchiError,
    RangeError,
    SingularDenominator,
    ValuationError,
)
from .families import (
    ALL_TAGS,
    APOSTOL_BERNOULLI,
    APOSTOL_GENOCCHI,
    APOSTOL_GENOCCHI_HIGHER,
    BERNOULLI_T1,
    BERNOULLI_T2,
    CLASSICAL_GENOCCHI,
    CLASSICAL_GENOCCHI_HIGHER,
    FROBENIUS,
    TYPE1,
    TYPE2,
    FamilyExpansion,
    FamilySpec,
    appell_expand,
    double_gf_rhs,
    expansion_from_dict,
    expansion_to_dict,
    family_polyseries,
    family_series,
    numbers_at,
    numbers_list,
    polynomial_at,
    symmetrized_S,
)
from .kernels import (
    CLASSICAL_POINT,
    K_MAX,
    ParamPoint,
    expm1_series,
    kernel_type1,
    kernel_type2,
    log1p_linear,
    polyexp_series,
    polylog_series,
)
from .series import (
    BiSeries,
    Poly,
    PolySeries,
    Rational,
    bis_geom,
    bis_mul,
    ps_add,
    ps_compose,
    ps_div,
    ps_exp_linear,
    ps_exp_x,
    ps_ipow,
    ps_mul,
    ps_scale,
)
from .verifier import (
    CheckConfig,
    CheckResult,
    Mismatch,
    Report,
    SUITES,
    check_appell,
    check_base_reduction,
    check_bernoulli_relation,
    check_expansion_in_numbers,
    check_explicit_formulas,
    check_remark_identities,
    check_shift_recurrence,
    check_stirling_relation,
    check_symmetrized_gf,
    default_config,
    default_samples,
    run_suite,
    stirling_convolution,
    stirling_weights,
    validate_config,
)

__version__ = "0.1.0"
