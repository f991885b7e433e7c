"""Witness sets in binary codes: verification, statistics, constructions, bounds
and exact search for the largest w-witness codes."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    Code,
    Codeword,
    CoordSet,
    complement,
    difference_support,
    has_w_witness_property,
    is_witness,
    permute,
    support,
    translate,
)

__all__ = [
    "Code",
    "Codeword",
    "CoordSet",
    "complement",
    "difference_support",
    "has_w_witness_property",
    "is_witness",
    "permute",
    "support",
    "translate",
]
