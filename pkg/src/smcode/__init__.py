from .code import (
    SmCode,
    additional_measurements,
    d_max_bound,
    identity_sm_code,
    improvement_factor,
    min_improvement_factor,
    repetition_equivalent,
    repetition_sm_code,
)
from .decoder import SmLookupDecoder, build_sm_lookup_decoder, decode_measured, decode_measured_batch
from .measured import (
    MeasuredStabilizerSet,
    audit_records,
    element_generators,
    encode_stabilizers,
    measured_syndrome,
    measured_syndromes_batch,
    stabilizer_weight_profile,
    weight_histogram,
    worst_effective_distance,
)

__all__ = [
    "MeasuredStabilizerSet",
    "SmCode",
    "SmLookupDecoder",
    "additional_measurements",
    "audit_records",
    "build_sm_lookup_decoder",
    "d_max_bound",
    "decode_measured",
    "decode_measured_batch",
    "element_generators",
    "encode_stabilizers",
    "identity_sm_code",
    "improvement_factor",
    "measured_syndrome",
    "measured_syndromes_batch",
    "min_improvement_factor",
    "repetition_equivalent",
    "repetition_sm_code",
    "stabilizer_weight_profile",
    "weight_histogram",
    "worst_effective_distance",
]
