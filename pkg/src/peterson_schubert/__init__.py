"""Structure constants of Peterson Schubert classes in the equivariant
cohomology of type A Peterson varieties, two localization oracles that check
them, and a bijective verifier for the bike lock form of a generalized
Vandermonde identity."""

from .bikelock import (
    IdentityCertificate,
    IdentityParams,
    bl_minus,
    bl_star,
    characterize_S_image,
    characterize_V_image,
    column_correspondence,
    enumerate_S,
    enumerate_V,
    lhs_count,
    rhs_count,
    verify_identity,
)
from .constants import (
    b_C_consecutive,
    b_consecutive,
    b_general,
    b_ordinary,
    b_product_of_blocks,
    b_union_consecutive,
    expand_product,
    nonvanishing,
)
from .monomial import InternalConsistencyError, TMonomial
from .oracle import localize_product, subword_restriction
from .restriction import restrict, restrict_consecutive, self_restrict
from .subsets import ConsecutiveBlock, SubsetMask, decompose, format_subset, parse_subset

__version__ = "0.1.0"

__all__ = [
    "ConsecutiveBlock",
    "IdentityCertificate",
    "IdentityParams",
    "InternalConsistencyError",
    "SubsetMask",
    "TMonomial",
    "b_C_consecutive",
    "b_consecutive",
    "b_general",
    "b_ordinary",
    "b_product_of_blocks",
    "b_union_consecutive",
    "bl_minus",
    "bl_star",
    "characterize_S_image",
    "characterize_V_image",
    "column_correspondence",
    "decompose",
    "enumerate_S",
    "enumerate_V",
    "expand_product",
    "format_subset",
    "lhs_count",
    "localize_product",
    "nonvanishing",
    "parse_subset",
    "restrict",
    "restrict_consecutive",
    "rhs_count",
    "self_restrict",
    "subword_restriction",
    "verify_identity",
]
