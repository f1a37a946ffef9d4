"""Exact arithmetic in quandle rings: tables, coverings, idempotents.

The package keeps every computation in integers, residues, or
Fractions; reports state the scope they are exhaustive for and never
claim more.
"""

from .core import (
    CocycleData,
    CocycleReport,
    Covering,
    FiniteQuandle,
    MagmaTable,
    QuandleHom,
    QuandleProperties,
    check_covering,
    cocycle_extension,
    conj_quandle,
    core_quandle,
    dihedral_quandle,
    find_coverings,
    fixed_points,
    from_right_mults,
    inner_orbits,
    load_quandle,
    make,
    perm_inverse,
    perm_order,
    product_quandle,
    properties,
    quandle_from_json,
    trivial_quandle,
    trivial_subquandles,
    twisted_union_quandle,
    union_quandle,
    validate_cocycle,
    validate_table,
)
from .errors import (
    BudgetExceededError,
    CarrierMismatchError,
    CompositeModulusError,
    ConstraintViolatedError,
    CoveringConditionError,
    HypothesisFailedError,
    IndexOutOfRangeError,
    InvalidParamsError,
    NotIdempotentError,
    NotIdempotentInputError,
    NotNilpotentError,
    NotPermutationError,
    NotRightDistributiveError,
    NotSurjectiveError,
    QuandleKitError,
    RingMismatchError,
    SearchBudgetExceededError,
)
from .free import (
    FreeQuandle,
    FreeQuandleElement,
    LeftAssocExpr,
    canonicalize_expr,
    enumerate_elements,
    eval_expr,
    fq_idempotent_search,
    fq_op,
    generator,
    left_assoc_product,
    length,
    products_stay_long,
    parse_element,
    parse_expr,
    reduce_word,
    render_expr,
    word_inv,
    word_mul,
)
from .idempotents import (
    ClassifyResult,
    CoveringFamilyParams,
    FamilyVerifyReport,
    IdempotentSetReport,
    SearchSpec,
    conjecture_scan,
    core_three_support_check,
    covering_classify,
    covering_family_params,
    covering_family_verify,
    covering_idempotent,
    dihedral_even_family,
    enumerate_boxed_Z,
    enumerate_mod_p,
    family_params_from_json,
    idempotent_quandle_check,
    right_zero_divisor_from_fiber,
    twisted_union_classify,
    union_cross_check,
    union_idempotents,
)
from .reports import IdempotentReport
from .ring import (
    QQ,
    ZZ,
    CoeffRing,
    IntegersMod,
    RingElement,
    SquareMatrix,
    augmentation,
    basis,
    element_from_json,
    element_to_json,
    has_nontrivial_right_annihilator,
    is_idempotent,
    is_ring_endomorphism,
    kernel_vector,
    mul,
    orbit_sum,
    right_mult_matrix,
    ring_from_tag,
    scalar_mul,
    zero,
)

__version__ = "0.1.0"
