# tests/test_acceptance.py
"""
End-to-end agreement between the layer-based results and the brute-force
oracle on seeded random corpora and exhaustive small cases.
"""

import itertools

import pytest

from ncfsym.ncf import (
    count_strongly_asymmetric,
    count_strongly_asymmetric_layered,
    is_strongly_asymmetric_ncf,
    layers,
    normalize,
    permute_within_layer,
    random_ncf,
    render_ncf,
    symmetric_pair,
    symmetry_level_ncf,
    symmetry_partition_ncf,
    to_truth_table,
)
from ncfsym.oracle import (
    classify_symmetric_canalyzing,
    enumerate_ncfs,
    is_canalyzing_bf,
    is_ncf_bf,
    is_strongly_asymmetric_bf,
    pairwise_symmetric_bf,
    symmetry_level_bf,
    symmetry_partition_bf,
)
from ncfsym.symtable import NotNcf, RecognitionStats, from_truth_table, recognize_ncf
from ncfsym.truthtable import Permutation, TruthTable, iter_all_tables

from .samples import LAYERED_NCF_NORMALIZED


def test_worked_examples(small_ncf, layered_ncf):
    assert to_truth_table(small_ncf).hex() == "45"
    assert layers(layered_ncf).q == 3
    assert render_ncf(normalize(layered_ncf)) == LAYERED_NCF_NORMALIZED


def test_symmetric_pair_matches_swap_oracle(random_ncfs):
    for ncf in random_ncfs:
        normalized = normalize(ncf)
        tt = to_truth_table(ncf)
        for i, j in itertools.combinations(range(1, ncf.num_vars + 1), 2):
            assert symmetric_pair(normalized, i, j) == pairwise_symmetric_bf(tt, i, j), render_ncf(ncf)


def test_level_formula(random_ncfs):
    for ncf in random_ncfs:
        normalized = normalize(ncf)
        decomposition = layers(normalized)
        level = symmetry_level_ncf(normalized)
        assert level == decomposition.r1 + 2 * decomposition.r2
        assert level == symmetry_level_bf(to_truth_table(ncf))
        assert decomposition.q <= level <= 2 * decomposition.q
        assert symmetry_partition_ncf(normalized).as_sets() == symmetry_partition_bf(to_truth_table(ncf)).as_sets()


class TestStrongAsymmetry:

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exhaustive(self, n):
        seen = 0
        for tt in iter_all_tables(n):
            ncf = is_ncf_bf(tt)
            if ncf is None:
                continue
            seen += 1
            oracle_verdict = is_strongly_asymmetric_bf(tt).strongly_asymmetric
            assert is_strongly_asymmetric_ncf(normalize(ncf)) == oracle_verdict
        assert seen == {2: 8, 3: 64, 4: 736}[n]

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_random(self, rng, n):
        for _ in range(200):
            ncf = random_ncf(n, rng)
            oracle_verdict = is_strongly_asymmetric_bf(to_truth_table(ncf)).strongly_asymmetric
            assert is_strongly_asymmetric_ncf(normalize(ncf)) == oracle_verdict


def test_block_swap_counterexample(block_swap):
    """Level 4 without strong asymmetry, which no NCF can do."""
    assert symmetry_level_bf(block_swap) == 4
    verdict = is_strongly_asymmetric_bf(block_swap)
    assert not verdict.strongly_asymmetric
    assert verdict.witness == Permutation(mapping=(3, 4, 1, 2))
    assert is_ncf_bf(block_swap) is None


class TestCounting:

    @pytest.mark.parametrize("n,strong", [(2, 4), (3, 24), (4, 240), (5, 2880)])
    def test_enumeration_matches_layered_count(self, n, strong):
        report = enumerate_ncfs(n)
        assert report.strongly_asymmetric_count == strong
        assert report.strongly_asymmetric_count == count_strongly_asymmetric_layered(n)
        assert report.level_histogram[n] == strong

    @pytest.mark.parametrize("n", [4, 5])
    def test_closed_form_undercounts(self, n):
        assert enumerate_ncfs(n).strongly_asymmetric_count > count_strongly_asymmetric(n)

    def test_oracle_agrees_exhaustively_on_four_variables(self):
        strong = 0
        for tt in iter_all_tables(4):
            if is_ncf_bf(tt) is not None and is_strongly_asymmetric_bf(tt).strongly_asymmetric:
                strong += 1
        assert strong == 240

    @pytest.mark.slow
    def test_six_variables(self):
        report = enumerate_ncfs(6, jobs=2)
        assert report.strongly_asymmetric_count == 41760
        assert report.distinct_ncf_count == 183936


class TestRecognizer:

    def test_round_trip(self, random_ncfs):
        for ncf in random_ncfs:
            normalized = normalize(ncf)
            partition = symmetry_partition_ncf(normalized)
            tt = to_truth_table(ncf)
            st = from_truth_table(tt, partition)
            stats = RecognitionStats()
            result = recognize_ncf(st, partition, stats)
            assert not isinstance(result, NotNcf), render_ncf(ncf)
            assert to_truth_table(result) == tt
            assert stats.row_visits <= 5 * partition.level * st.row_count

    @pytest.mark.parametrize("n", [2, 3, pytest.param(4, marks=pytest.mark.slow)])
    def test_agrees_with_oracle(self, n):
        for tt in iter_all_tables(n):
            partition = symmetry_partition_bf(tt)
            result = recognize_ncf(from_truth_table(tt, partition), partition)
            expected = is_ncf_bf(tt)
            assert isinstance(result, NotNcf) == (expected is None), tt
            if expected is not None:
                assert to_truth_table(result) == tt


@pytest.mark.parametrize("n", [2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_symmetric_canalyzing_classification(n):
    """Only OR, AND, NOR, NAND and the constants are symmetric and canalyzing."""
    ones = [
        lambda *x: any(x),
        lambda *x: all(x),
        lambda *x: not any(x),
        lambda *x: not all(x),
    ]
    ncf_like = {TruthTable.from_function(n, f) for f in ones}
    constants = {TruthTable.constant(n, False), TruthTable.constant(n, True)}

    canalyzing, nested = set(), set()
    for tt in iter_all_tables(n):
        if symmetry_level_bf(tt) != 1:
            continue
        if is_canalyzing_bf(tt):
            canalyzing.add(tt)
            assert classify_symmetric_canalyzing(tt) is not None
        if is_ncf_bf(tt) is not None:
            nested.add(tt)

    assert canalyzing == ncf_like | constants
    assert nested == ncf_like


class TestTransformationSafety:

    def test_within_layer_permutations(self, rng):
        for _ in range(10000):
            ncf = random_ncf(int(rng.integers(2, 9)), rng)
            decomposition = layers(ncf)
            index = int(rng.integers(1, decomposition.q + 1))
            size = decomposition.layers[index - 1].size
            perm = Permutation(mapping=tuple(int(p) + 1 for p in rng.permutation(size)))
            assert to_truth_table(permute_within_layer(ncf, index, perm)) == to_truth_table(ncf)

    def test_normalization(self, rng):
        for _ in range(10000):
            ncf = random_ncf(int(rng.integers(1, 9)), rng)
            assert to_truth_table(normalize(ncf)) == to_truth_table(ncf)
