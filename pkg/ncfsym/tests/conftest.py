# tests/conftest.py
import numpy as np
import pytest

from ncfsym.ncf import make_fn_example, parse_ncf, random_ncf
from ncfsym.truthtable import TruthTable, parse_truth_table

from .samples import BLOCK_SWAP_TABLE, LAYERED_NCF, SMALL_NCF


@pytest.fixture
def small_ncf():
    return parse_ncf(SMALL_NCF)


@pytest.fixture
def layered_ncf():
    return parse_ncf(LAYERED_NCF)


@pytest.fixture
def block_swap():
    """4-variable function of level 4 that is invariant under (x1 x3)(x2 x4)"""
    return parse_truth_table(BLOCK_SWAP_TABLE)


@pytest.fixture
def or3():
    return TruthTable.from_function(3, lambda a, b, c: a or b or c)


@pytest.fixture
def majority3():
    return TruthTable.from_function(3, lambda a, b, c: a + b + c >= 2)


@pytest.fixture
def xor2():
    return TruthTable.from_function(2, lambda a, b: a ^ b)


@pytest.fixture
def xor3():
    return TruthTable.from_function(3, lambda a, b, c: a ^ b ^ c)


@pytest.fixture
def f6():
    return make_fn_example(6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_ncfs(rng):
    """1000 random representations with 2 <= n <= 8"""
    return [random_ncf(int(rng.integers(2, 9)), rng) for _ in range(1000)]


@pytest.fixture
def write_file(tmp_path):
    """Write text to a temporary file and return its path"""
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write
