from .code import (
    StabilizerCode,
    effective_distance,
    in_stabilizer_group,
    is_logical_failure,
    logical_failures_batch,
    stabilizer_code_from_strings,
    syndrome,
    syndromes_batch,
    validate,
)
from .lookup import QuantumLookupDecoder, build_quantum_lookup_decoder
from .surface import build_rotated_surface_code, parse_code_spec

__all__ = [
    "QuantumLookupDecoder",
    "StabilizerCode",
    "build_quantum_lookup_decoder",
    "build_rotated_surface_code",
    "effective_distance",
    "in_stabilizer_group",
    "is_logical_failure",
    "logical_failures_batch",
    "parse_code_spec",
    "stabilizer_code_from_strings",
    "syndrome",
    "syndromes_batch",
    "validate",
]
