from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from src.algebra.bitmatrix import BitMatrix, encode_message
from src.algebra.pauli import PauliVec
from src.errors import DimensionMismatchError, LdgmError, RankDeficientError, TableCapacityError
from src.peg.catalogue import FIXTURES, load_fixture
from src.peg.lifting import expand
from src.sim.sampling import enumerate_patterns
from src.smcode.code import (
    SmCode,
    additional_measurements,
    d_max_bound,
    identity_sm_code,
    improvement_factor,
    min_improvement_factor,
    repetition_equivalent,
    repetition_sm_code,
)
from src.smcode.decoder import build_sm_lookup_decoder, decode_measured, decode_measured_batch, sm_table_size
from src.smcode.measured import (
    audit_records,
    element_generators,
    encode_stabilizers,
    measured_syndrome,
    measured_syndromes_batch,
    stabilizer_weight_profile,
    weight_histogram,
    worst_effective_distance,
)
from src.stabilizer.code import syndrome, syndromes_batch

TABLE_ONE = ["ZZII", "IZZI", "IIZZ", "ZIZI", "IZIZ", "ZZZZ", "ZIIZ"]


def fixture_code(name: str) -> SmCode:
    return SmCode(expand(load_fixture(name).lift), name=name)


def all_flip_patterns(n: int, t: int) -> np.ndarray:
    rows = [np.zeros(n, dtype=np.uint8)]
    for w in range(1, t + 1):
        for positions in combinations(range(n), w):
            row = np.zeros(n, dtype=np.uint8)
            row[list(positions)] = 1
            rows.append(row)
    return np.stack(rows)


def assert_decodes_exactly(sm: SmCode, t: int, rng: np.random.Generator) -> int:
    dec = build_sm_lookup_decoder(sm, t)
    flips = all_flip_patterns(sm.n_sm, t)
    msgs = rng.integers(0, 2, size=(len(flips), sm.l), dtype=np.uint8)
    m_hat = encode_message(msgs, sm.gen) ^ flips
    s, ok = decode_measured_batch(sm, dec, m_hat)
    assert ok.all()
    assert np.array_equal(s, msgs)
    return len(flips) - 1


# ----------------------------------------------------------------------
# Encoding stabilizer products
# ----------------------------------------------------------------------


def test_hamming_encoding_gives_the_seven_products(three_stabilizer_code, hamming_sm):
    ms = encode_stabilizers(three_stabilizer_code, hamming_sm)
    assert [e.to_string() for e in ms.elements] == TABLE_ONE
    assert stabilizer_weight_profile(ms) == [2, 2, 2, 2, 2, 4, 2]
    assert weight_histogram(ms) == {2: 6, 4: 1}
    assert element_generators(ms, 6) == [0, 1, 2]
    assert audit_records(ms)[5] == {"index": 5, "pauli": "ZZZZ", "weight": 4, "generators": [0, 2]}


def test_measured_syndrome_is_encoded_syndrome(three_stabilizer_code, hamming_sm):
    ms = encode_stabilizers(three_stabilizer_code, hamming_sm)
    e = PauliVec.from_string("IXII")
    s = syndrome(three_stabilizer_code, e)
    clean = measured_syndrome(ms, e, np.zeros(7, dtype=np.uint8))
    assert np.array_equal(clean, encode_message(s, hamming_sm.gen))
    flips = np.zeros(7, dtype=np.uint8)
    flips[3] = 1
    assert np.array_equal(measured_syndrome(ms, e, flips), clean ^ flips)


@pytest.mark.parametrize("w_q", [1, 2])
def test_measured_syndromes_encode_every_low_weight_syndrome(rsc5, w_q):
    sm = fixture_code("h2x5_1")
    ms = encode_stabilizers(rsc5, sm)
    seen = 0
    for qx, qz, meas in enumerate_patterns(rsc5.n, w_q, ms.n_sm, 0):
        expected = encode_message(syndromes_batch(rsc5, qx, qz), sm.gen)
        assert np.array_equal(measured_syndromes_batch(ms, qx, qz, meas), expected)
        seen += len(qx)
    assert seen == comb(25, w_q) * 3**w_q


def test_encode_rejects_row_mismatch(rsc3):
    with pytest.raises(DimensionMismatchError):
        encode_stabilizers(rsc3, repetition_sm_code(24, 5))


def test_identity_encoding_keeps_weight_four(rsc5):
    ms = encode_stabilizers(rsc5, identity_sm_code(24))
    assert max(stabilizer_weight_profile(ms)) == 4
    assert worst_effective_distance(ms, 5) == 1


def test_fixture_encoding_weights_are_confined(rsc5):
    ms = encode_stabilizers(rsc5, fixture_code("h2x5_1"))
    profile = stabilizer_weight_profile(ms)
    assert len(profile) == 60
    assert max(profile) <= 12
    assert min(profile) < 12


@pytest.mark.slow
@pytest.mark.parametrize("name", list(FIXTURES))
def test_every_fixture_encoding_weight_at_most_twelve(rsc5, name):
    hist = weight_histogram(encode_stabilizers(rsc5, fixture_code(name)))
    assert max(hist) <= 12
    assert any(w < 12 for w in hist)


# ----------------------------------------------------------------------
# Parameters and bounds
# ----------------------------------------------------------------------


def test_d_max_bound_examples():
    assert d_max_bound(24, 60, 3) == 7
    assert d_max_bound(24, 120, 1) == 5
    assert d_max_bound(5, 7, 2) == 2
    with pytest.raises(LdgmError):
        d_max_bound(0, 60, 3)


def test_improvement_factors():
    assert [min_improvement_factor(w) for w in (1, 3, 5)] == [Fraction(1), Fraction(1, 3), Fraction(1, 5)]
    assert improvement_factor(60, 5, 24) == Fraction(1, 2)
    assert additional_measurements(24, 7, 3) == Fraction(32)


def test_repetition_code_parameters():
    rep = repetition_sm_code(24, 5)
    assert rep.params() == (120, 24, 5)
    assert set(rep.column_weights) == {1}
    assert rep.distance <= d_max_bound(24, 120, 1)
    with pytest.raises(LdgmError):
        repetition_sm_code(0, 5)


def test_rank_deficient_generator_rejected():
    with pytest.raises(RankDeficientError):
        SmCode(BitMatrix([[1, 1, 0], [1, 1, 0]]))


def test_json_round_trip(hamming_sm):
    payload = hamming_sm.to_json()
    assert payload["distance"] == 4
    assert SmCode.from_json(payload) == hamming_sm
    payload["distance"] = 3
    with pytest.raises(LdgmError):
        SmCode.from_json(payload)


def test_fixture_shape_and_column_weight():
    sm = fixture_code("h6x15")
    assert (sm.l, sm.n_sm) == (24, 60)
    assert set(sm.column_weights) == {3}


def test_fixture_distance_and_repetition_equivalent():
    sm = fixture_code("h2x5_1")
    assert sm.params() == (60, 24, 7)
    assert sm.distance <= d_max_bound(24, 60, 3)
    assert repetition_equivalent(sm) == (168, Fraction(14, 5))


@pytest.mark.slow
@pytest.mark.parametrize("name", list(FIXTURES))
def test_every_fixture_is_60_24_7(name):
    parsed = load_fixture(name)
    sm = SmCode(expand(parsed.lift), name=name)
    assert set(sm.column_weights) == {3}
    assert sm.params() == (60, 24, 7) == parsed.expect


# ----------------------------------------------------------------------
# Lookup decoding
# ----------------------------------------------------------------------


def test_sm_table_size():
    assert sm_table_size(60, 3) == 36051
    assert sm_table_size(120, 2) == 7261


def test_repetition_decoder_corrects_every_double_flip(rng):
    assert assert_decodes_exactly(repetition_sm_code(24, 5), 2, rng) == 7260


def test_fixture_decoder_corrects_every_triple_flip(rng):
    assert assert_decodes_exactly(fixture_code("h4x10_1"), 3, rng) == 36050


@pytest.mark.slow
@pytest.mark.parametrize("name", list(FIXTURES))
def test_every_fixture_decoder_corrects_every_triple_flip(name, rng):
    assert assert_decodes_exactly(fixture_code(name), 3, rng) == 36050


def test_decode_measured_single(hamming_sm):
    dec = build_sm_lookup_decoder(hamming_sm, 1)
    codeword = encode_message([1, 0, 1], hamming_sm.gen)
    s, ok = decode_measured(hamming_sm, dec, codeword)
    assert ok and s.tolist() == [1, 0, 1]
    corrupted = codeword.copy()
    corrupted[6] ^= 1
    s, ok = decode_measured(hamming_sm, dec, corrupted)
    assert ok and s.tolist() == [1, 0, 1]
    with pytest.raises(DimensionMismatchError):
        decode_measured(hamming_sm, dec, codeword[:5])


def test_decoder_miss_is_reported_in_band():
    sm = repetition_sm_code(2, 3)
    dec = build_sm_lookup_decoder(sm, 0)
    m_hat = np.array([[1, 0, 0, 0, 0, 0]], dtype=np.uint8)
    s, ok = decode_measured_batch(sm, dec, m_hat)
    assert not ok[0]
    assert s.shape == (1, 2)


def test_decoder_capacity_cap():
    with pytest.raises(TableCapacityError):
        build_sm_lookup_decoder(repetition_sm_code(24, 5), 3, max_entries=1000)
