"""Dilatações: dicionário dilatado, gauge por blocos, forma real e Stinespring."""

from .dilation_model import DilatedSystem, StinespringResult
from .dilated import block_gauge, dilated_dictionary, from_blocks, realify, tensor_identity, to_blocks
from .stinespring import embed_columns, partial_isometry, stinespring_dilate, triple_index

__all__ = [
    "DilatedSystem",
    "StinespringResult",
    "block_gauge",
    "dilated_dictionary",
    "from_blocks",
    "realify",
    "tensor_identity",
    "to_blocks",
    "embed_columns",
    "partial_isometry",
    "stinespring_dilate",
    "triple_index",
]
