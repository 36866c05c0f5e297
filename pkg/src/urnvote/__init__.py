"""Voting strategies that let a crowd with private two-signal (or C-signal)
observations elect the correct urn, plus a seeded Monte Carlo engine to test them.

Urn, color and landmark indices are 1-based in every public function.
"""

from urnvote.model import (
    BichromaticInstance,
    MulticolorInstance,
    lower_bound_instance,
    make_bichromatic,
    make_multicolor,
)
from urnvote.plurality2 import (
    PluralityScheme,
    build_plurality_scheme,
    expected_shares,
    margin,
    plurality_budget,
    plurality_budget_cap,
)

__all__ = [
    "BichromaticInstance",
    "MulticolorInstance",
    "PluralityScheme",
    "build_plurality_scheme",
    "expected_shares",
    "lower_bound_instance",
    "make_bichromatic",
    "make_multicolor",
    "margin",
    "plurality_budget",
    "plurality_budget_cap",
]

__version__ = "0.1.0"
