from itertools import product

import numpy as np
import pytest

from src.algebra.bitmatrix import (
    BitMatrix,
    bits_to_key,
    bits_to_keys,
    encode_message,
    parity_check_of,
    rank,
    row_space_contains,
    solve_pivots,
)
from src.algebra.distance import min_distance
from src.algebra.pauli import (
    Gf4,
    PauliVec,
    gf4_add,
    gf4_conj,
    gf4_mul,
    gf4_trace,
    trace_inner_product,
    trace_inner_product_gf4,
)
from src.errors import DimensionMismatchError, FixtureParseError, LdgmError, RankDeficientError

from .conftest import HAMMING_ROWS


def naive_min_distance(G: BitMatrix) -> int:
    best = G.cols
    for msg in product((0, 1), repeat=G.rows):
        if any(msg):
            best = min(best, int(encode_message(msg, G).sum()))
    return best


# ----------------------------------------------------------------------
# GF(4) and Paulis
# ----------------------------------------------------------------------


def test_gf4_multiplication_table():
    w, wb = Gf4.OMEGA, Gf4.OMEGA_BAR
    assert gf4_mul(w, w) == wb
    assert gf4_mul(w, wb) == Gf4.ONE
    assert gf4_mul(wb, wb) == w
    assert gf4_add(Gf4.ONE, w) == wb
    assert gf4_conj(w) == wb and gf4_conj(Gf4.ONE) == Gf4.ONE
    assert [gf4_trace(a) for a in Gf4] == [0, 0, 1, 1]


def test_trace_forms_agree_on_all_symbol_pairs():
    for a, b in product("IXYZ", repeat=2):
        x, y = PauliVec.from_string(a), PauliVec.from_string(b)
        expected = 0 if a == "I" or b == "I" or a == b else 1
        assert trace_inner_product(x, y) == expected
        assert trace_inner_product_gf4(x, y) == expected


def test_trace_inner_product_examples():
    assert trace_inner_product(PauliVec.from_string("XI"), PauliVec.from_string("ZI")) == 1
    assert trace_inner_product(PauliVec.from_string("XX"), PauliVec.from_string("ZZ")) == 0
    assert trace_inner_product(PauliVec.from_string("Y"), PauliVec.from_string("Y")) == 0


def test_trace_inner_product_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        trace_inner_product(PauliVec.from_string("XI"), PauliVec.from_string("X"))


PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(label: str) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for ch in label:
        out = np.kron(out, PAULI_MATRICES[ch])
    return out


def random_pauli(n: int, rng: np.random.Generator) -> PauliVec:
    return PauliVec(rng.integers(0, 2, n, dtype=np.uint8), rng.integers(0, 2, n, dtype=np.uint8))


def test_trace_inner_product_matches_matrix_commutation():
    assert np.allclose(pauli_matrix("XYI") @ pauli_matrix("ZYX"), -pauli_matrix("ZYX") @ pauli_matrix("XYI"))
    assert trace_inner_product(PauliVec.from_string("XYI"), PauliVec.from_string("ZYX")) == 1

    labels = ["".join(p) for p in product("IXYZ", repeat=3)]
    matrices = {label: pauli_matrix(label) for label in labels}
    for a, b in product(labels, repeat=2):
        A, B = matrices[a], matrices[b]
        expected = 0 if np.allclose(A @ B, B @ A) else 1
        assert trace_inner_product(PauliVec.from_string(a), PauliVec.from_string(b)) == expected, (a, b)


def test_trace_inner_product_symmetric_and_bilinear(rng):
    for _ in range(200):
        x, y, z = (random_pauli(7, rng) for _ in range(3))
        assert trace_inner_product(x, y) == trace_inner_product(y, x)
        assert trace_inner_product(x + y, z) == trace_inner_product(x, z) ^ trace_inner_product(y, z)
        assert trace_inner_product(x, x) == 0


def test_pauli_string_and_product():
    p = PauliVec.from_string("xyiz")
    assert p.to_string() == "XYIZ"
    assert p.weight == 3
    assert p.support() == [0, 1, 3]
    assert (p + PauliVec.from_string("ZZII")).to_string() == "YXIZ"
    assert (p + p).is_identity()
    with pytest.raises(LdgmError):
        PauliVec.from_string("XQ")


def test_pauli_order_key_puts_y_before_z():
    keys = sorted(PauliVec.from_string(s).order_key() for s in ("ZI", "YI", "IX", "XI"))
    assert keys[0] == PauliVec.from_string("IX").order_key()
    assert keys[-1] == PauliVec.from_string("ZI").order_key()


# ----------------------------------------------------------------------
# BitMatrix
# ----------------------------------------------------------------------


def test_bitmatrix_text_and_json():
    M = BitMatrix.from_row_strings(HAMMING_ROWS)
    assert M.shape == (3, 7)
    assert BitMatrix.from_text("# comment\n" + M.to_text()) == M
    assert BitMatrix.from_json(M.to_json()) == M
    assert M.col_weights().tolist() == [1, 1, 1, 2, 2, 2, 3]
    assert (M @ M.T).shape == (3, 3)
    assert M.T.T == M


def test_bitmatrix_rejects_ragged_and_bad_entries():
    with pytest.raises(FixtureParseError):
        BitMatrix.from_row_strings(["101", "10"])
    with pytest.raises(FixtureParseError):
        BitMatrix.from_row_strings(["102"])
    with pytest.raises(LdgmError):
        BitMatrix([[0, 2]])


def test_rank_examples():
    assert rank(BitMatrix.identity(4)) == 4
    assert rank(BitMatrix([[1, 1], [1, 1]])) == 1
    assert rank(BitMatrix.zeros(3, 5)) == 0


def test_encode_message_hamming():
    G = BitMatrix.from_row_strings(HAMMING_ROWS)
    assert encode_message([1, 1, 0], G).tolist() == [1, 1, 0, 0, 1, 1, 0]
    batch = encode_message(np.eye(3, dtype=np.uint8), G)
    assert batch.shape == (3, 7)
    with pytest.raises(DimensionMismatchError):
        encode_message([1, 0], G)


def test_min_distance_matches_brute_force(rng):
    G = BitMatrix.from_row_strings(HAMMING_ROWS)
    assert min_distance(G) == 4
    assert min_distance(BitMatrix.identity(5)) == 1
    for _ in range(20):
        while True:
            G = BitMatrix(rng.integers(0, 2, size=(6, 14)))
            if rank(G) == 6:
                break
        assert min_distance(G) == naive_min_distance(G)


def test_min_distance_rejects_dependent_rows():
    with pytest.raises(RankDeficientError):
        min_distance(BitMatrix([[1, 0, 1], [1, 0, 1]]))


def test_parity_check_annihilates_generator(rng):
    G = BitMatrix.from_row_strings(HAMMING_ROWS)
    H = parity_check_of(G)
    assert H.shape == (4, 7)
    assert (H @ G.T).is_zero()
    assert rank(H) == 4
    with pytest.raises(RankDeficientError):
        parity_check_of(BitMatrix([[1, 1], [1, 1]]))


def test_solve_pivots_recovers_messages(rng):
    G = BitMatrix.from_row_strings(HAMMING_ROWS)
    J, inv = solve_pivots(G)
    msgs = rng.integers(0, 2, size=(10, 3), dtype=np.uint8)
    codewords = encode_message(msgs, G)
    recovered = (codewords[:, J].astype(np.int64) @ inv.astype(np.int64)) & 1
    assert np.array_equal(recovered, msgs)


def test_row_space_contains():
    M = BitMatrix.from_row_strings(HAMMING_ROWS)
    assert row_space_contains(M, [1, 1, 0, 0, 1, 1, 0])
    assert row_space_contains(M, np.zeros(7, dtype=np.uint8))
    assert not row_space_contains(M, [1, 0, 0, 0, 0, 0, 0])


def test_syndrome_keys_are_xor_linear(rng):
    a = rng.integers(0, 2, size=37, dtype=np.uint8)
    b = rng.integers(0, 2, size=37, dtype=np.uint8)
    assert bits_to_key(a ^ b) == bits_to_key(a) ^ bits_to_key(b)
    assert bits_to_keys(np.stack([a, b])) == [bits_to_key(a), bits_to_key(b)]
