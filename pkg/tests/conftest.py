import numpy as np
import pytest

from src.algebra.bitmatrix import BitMatrix
from src.smcode.code import SmCode, identity_sm_code, repetition_sm_code
from src.stabilizer.code import stabilizer_code_from_strings
from src.stabilizer.surface import build_rotated_surface_code
from src.sim.system import build_system

HAMMING_ROWS = ["1001011", "0101101", "0010111"]


@pytest.fixture(scope="session")
def rsc3():
    return build_rotated_surface_code(3)


@pytest.fixture(scope="session")
def rsc5():
    return build_rotated_surface_code(5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def three_stabilizer_code():
    """Four-qubit code with generators ZZII, IZZI, IIZZ."""
    return stabilizer_code_from_strings(["ZZII", "IZZI", "IIZZ"], "XXXX", "ZIII", name="zz4")


@pytest.fixture(scope="session")
def hamming_sm():
    return SmCode(BitMatrix.from_row_strings(HAMMING_ROWS), name="hamming")


@pytest.fixture(scope="session")
def zz_system():
    """Two-qubit ZZ code read out once per generator: one measurement flip is always fatal."""
    code = stabilizer_code_from_strings(["ZZ"], "XX", "ZI", name="zz")
    return build_system("zz", code, identity_sm_code(1), quantum_t=1)


@pytest.fixture(scope="session")
def rsc3_rep_system(rsc3):
    return build_system("rep3", rsc3, repetition_sm_code(rsc3.l, 3), quantum_t=1)


@pytest.fixture(scope="session")
def rsc3_id_system(rsc3):
    return build_system("id", rsc3, identity_sm_code(rsc3.l), quantum_t=1)
