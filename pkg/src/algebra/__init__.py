from .bitmatrix import (
    BitMatrix,
    bits_to_key,
    bits_to_keys,
    encode_message,
    parity_check_of,
    rank,
    row_space_contains,
    solve_pivots,
)
from .distance import min_distance
from .pauli import Gf4, PauliVec, stack_paulis, trace_inner_product, trace_inner_product_gf4

__all__ = [
    "BitMatrix",
    "Gf4",
    "PauliVec",
    "bits_to_key",
    "bits_to_keys",
    "encode_message",
    "min_distance",
    "parity_check_of",
    "rank",
    "row_space_contains",
    "solve_pivots",
    "stack_paulis",
    "trace_inner_product",
    "trace_inner_product_gf4",
]
