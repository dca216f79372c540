"""Python bindings for the shrinkdim C++ core."""

from ._shrinkdim import (
    ShrinkdimError,
    cylinder,
    lemma_sum,
    membership,
    predim,
    pressure_root,
    witness_summary,
)

__all__ = ["ShrinkdimError", "cylinder", "lemma_sum", "membership", "predim", "pressure_root", "witness_summary"]
