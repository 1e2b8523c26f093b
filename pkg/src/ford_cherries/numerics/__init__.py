"""Numeric helpers: gamma-ratio products and root finding."""

from ford_cherries.numerics.products import (
    gamma_ratio_asymptotic,
    gamma_ratio_product,
    gamma_ratio_reference,
    product_bound_constant,
)
from ford_cherries.numerics.roots import bisect_root

__all__ = [
    "gamma_ratio_product",
    "gamma_ratio_reference",
    "gamma_ratio_asymptotic",
    "product_bound_constant",
    "bisect_root",
]
