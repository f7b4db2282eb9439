"""Sign patterns of hyperbolic polynomials: classification, exact constructions,
and searches over the possible orders of root moduli."""

__version__ = "0.1.0"

from .signpattern import (  # noqa: E402
    CanonicityVerdict,
    ChangePreservationPattern,
    OrderWord,
    SignPattern,
    Status,
    canonical_order,
    classify_static,
    counts,
    cpp_of,
    iota_m,
    iota_mr,
    iota_r,
    is_type1,
    is_type2,
    orbit,
    parse,
)
from .exactpoly import (  # noqa: E402
    PatternWithZeros,
    RationalPoly,
    lemma1_pattern,
    order_word_of,
    p_ell,
    poly_from_roots,
    sign_pattern_of,
)
from .witness import Witness, make_witness, verify_witness  # noqa: E402
from .construct import (  # noqa: E402
    Theorem3Params,
    build_canonical,
    build_noncanonical_pair,
    concat_back,
    concat_front,
    theorem3_realize,
)
from .realize import (  # noqa: E402
    RealizabilityReport,
    decide_canonicity,
    enumerate_order_words,
    explore,
    search_realization,
    transform_witness,
)
from .catalog import Catalog  # noqa: E402
