from itertools import combinations, product

import numpy as np
import pytest

from src.algebra.pauli import PauliVec
from src.errors import DimensionMismatchError, LdgmError, TableCapacityError
from src.stabilizer.code import (
    StabilizerCode,
    effective_distance,
    in_stabilizer_group,
    is_logical_failure,
    logical_failures_batch,
    stabilizer_code_from_strings,
    syndrome,
    syndromes_batch,
)
from src.stabilizer.lookup import build_quantum_lookup_decoder, quantum_table_size
from src.stabilizer.surface import build_rotated_surface_code, parse_code_spec


# ----------------------------------------------------------------------
# Rotated surface code
# ----------------------------------------------------------------------


def test_rsc5_generator_counts(rsc5):
    assert (rsc5.n, rsc5.k, rsc5.l) == (25, 1, 24)
    weights = rsc5.generator_weights()
    assert weights.count(4) == 16 and weights.count(2) == 8
    types = rsc5.generator_types()
    assert types.count("X") == 12 and types.count("Z") == 12


def test_rsc3_generator_counts(rsc3):
    assert (rsc3.n, rsc3.l) == (9, 8)
    assert sorted(rsc3.generator_weights()) == [2, 2, 2, 2, 4, 4, 4, 4]


def test_logical_operators_have_weight_d(rsc5):
    assert rsc5.logical_z.to_string() == "ZZZZZ" + "I" * 20
    assert rsc5.logical_x.weight == 5
    assert rsc5.logical_x.support() == [0, 5, 10, 15, 20]


def test_center_z_error_flips_two_x_checks(rsc5):
    e = PauliVec.on_qubits(25, "Z", [12])
    s = syndrome(rsc5, e)
    assert s.sum() == 2
    assert all(rsc5.generator_types()[i] == "X" for i in np.flatnonzero(s))


def test_surface_code_rejects_even_or_small_distance():
    for d in (1, 2, 4):
        with pytest.raises(LdgmError):
            build_rotated_surface_code(d)
    with pytest.raises(LdgmError):
        parse_code_spec("toric:5")
    assert parse_code_spec("rsc:3").n == 9


def test_generators_are_stabilizers(rsc3):
    for g in rsc3.generators:
        assert in_stabilizer_group(rsc3, g)
        assert not is_logical_failure(rsc3, g)
    product_of_all = rsc3.generators[0] + rsc3.generators[1]
    assert in_stabilizer_group(rsc3, product_of_all)


def test_logicals_are_failures(rsc3):
    assert is_logical_failure(rsc3, rsc3.logical_x)
    assert is_logical_failure(rsc3, rsc3.logical_z)
    assert is_logical_failure(rsc3, rsc3.logical_x + rsc3.generators[0])
    assert not is_logical_failure(rsc3, PauliVec.identity(9))


def test_syndrome_with_nonzero_bits_is_failure(rsc3):
    assert is_logical_failure(rsc3, PauliVec.on_qubits(9, "X", [4]))


def test_syndrome_length_checked(rsc3):
    with pytest.raises(DimensionMismatchError):
        syndrome(rsc3, PauliVec.identity(4))


def test_batch_helpers_match_scalar(rsc3, rng):
    rx = rng.integers(0, 2, size=(50, 9), dtype=np.uint8)
    rz = rng.integers(0, 2, size=(50, 9), dtype=np.uint8)
    batch_s = syndromes_batch(rsc3, rx, rz)
    batch_f = logical_failures_batch(rsc3, rx, rz)
    for i in range(50):
        p = PauliVec(rx[i], rz[i])
        assert np.array_equal(batch_s[i], syndrome(rsc3, p))
        assert batch_f[i] == is_logical_failure(rsc3, p)


def test_syndrome_is_linear_in_the_error(rsc5, rng):
    for _ in range(100):
        e1 = PauliVec(rng.integers(0, 2, 25, dtype=np.uint8), rng.integers(0, 2, 25, dtype=np.uint8))
        e2 = PauliVec(rng.integers(0, 2, 25, dtype=np.uint8), rng.integers(0, 2, 25, dtype=np.uint8))
        assert np.array_equal(syndrome(rsc5, e1 + e2), syndrome(rsc5, e1) ^ syndrome(rsc5, e2))
    assert not syndrome(rsc5, PauliVec.identity(25)).any()


@pytest.mark.slow
def test_no_undetected_logical_below_distance(rsc5):
    """Every nonidentity Pauli of weight <= 4 on the d = 5 code has a nonzero syndrome or is a stabilizer."""
    n = rsc5.n
    for w in range(1, 5):
        sites = np.array(list(combinations(range(n), w)))
        labels = np.array(list(product((1, 2, 3), repeat=w)), dtype=np.uint8)
        for lab in labels:
            vals = np.zeros((len(sites), n), dtype=np.uint8)
            vals[np.arange(len(sites))[:, None], sites] = lab
            rx, rz = vals & 1, vals >> 1
            silent = ~syndromes_batch(rsc5, rx, rz).any(axis=1)
            assert not logical_failures_batch(rsc5, rx[silent], rz[silent]).any()


# ----------------------------------------------------------------------
# Abstract codes
# ----------------------------------------------------------------------


def test_code_from_strings_validates():
    with pytest.raises(LdgmError, match="anticommute"):
        stabilizer_code_from_strings(["XI", "ZI"], "XX", "ZZ")
    with pytest.raises(LdgmError, match="dependent"):
        stabilizer_code_from_strings(["ZZI", "ZZI"], "XXX", "ZII")


def test_json_round_trip(three_stabilizer_code):
    payload = three_stabilizer_code.to_json()
    assert payload["generators"] == ["ZZII", "IZZI", "IIZZ"]
    assert StabilizerCode.from_json(payload) == three_stabilizer_code


def test_effective_distance():
    assert effective_distance(5, 4) == 1
    assert effective_distance(5, 2) == 2
    assert effective_distance(5, 1) == 5
    with pytest.raises(LdgmError):
        effective_distance(5, 0)


# ----------------------------------------------------------------------
# Lookup decoder
# ----------------------------------------------------------------------


def test_quantum_table_size():
    assert quantum_table_size(25, 2) == 2776
    assert quantum_table_size(9, 1) == 28


def test_lookup_decoder_corrects_every_weight_two_error(rsc5):
    dec = build_quantum_lookup_decoder(rsc5, 2)
    n = rsc5.n
    for w in (1, 2):
        sites = np.array(list(combinations(range(n), w)))
        for lab in product((1, 2, 3), repeat=w):
            vals = np.zeros((len(sites), n), dtype=np.uint8)
            vals[np.arange(len(sites))[:, None], sites] = np.array(lab, dtype=np.uint8)
            ex, ez = vals & 1, vals >> 1
            cx, cz, found = dec.decode_batch(syndromes_batch(rsc5, ex, ez))
            assert found.all()
            assert not logical_failures_batch(rsc5, ex ^ cx, ez ^ cz).any()


def test_lookup_decoder_prefers_lexicographic_minimum():
    code = stabilizer_code_from_strings(["ZZ"], "XX", "ZI")
    dec = build_quantum_lookup_decoder(code, 1)
    assert dec.decode(np.array([1], dtype=np.uint8)).to_string() == "IX"
    assert dec.decode(np.array([0], dtype=np.uint8)).is_identity()


def test_lookup_decoder_miss_and_cap(rsc3):
    dec = build_quantum_lookup_decoder(rsc3, 0)
    assert len(dec) == 1
    assert dec.decode(np.ones(8, dtype=np.uint8)) is None
    _, _, found = dec.decode_batch(np.ones((2, 8), dtype=np.uint8))
    assert not found.any()
    with pytest.raises(TableCapacityError):
        build_quantum_lookup_decoder(rsc3, 2, max_entries=10)
    with pytest.raises(DimensionMismatchError):
        dec.decode(np.zeros(3, dtype=np.uint8))
