# tests/test_symtable.py
import numpy as np
import pytest

from ncfsym.errors import DimensionError, NotSymmetricError, ParseError
from ncfsym.ncf import NcfRepr, normalize, render_ncf, symmetry_partition_ncf, to_truth_table as ncf_table
from ncfsym.symtable import (
    NotNcf,
    RecognitionStats,
    SymTable,
    find_canalyzing,
    from_truth_table,
    parse_symtable,
    recognize_ncf,
    render_symtable,
    to_truth_table,
)
from ncfsym.truthtable import SymmetryPartition, TruthTable

from .samples import MAJORITY3_COUNTS, OR3, OR3_COUNTS

WHOLE_3 = SymmetryPartition(groups=((1, 2, 3),))


class TestFromTruthTable:

    def test_or3_by_count(self, or3):
        st = from_truth_table(or3, WHOLE_3)
        assert st.group_sizes == (3,)
        assert st.values.tolist() == [False, True, True, True]
        assert st.row_count == 4

    def test_parity_by_count(self, xor2):
        st = from_truth_table(xor2, SymmetryPartition(groups=((1, 2),)))
        assert st.values.tolist() == [False, True, False]

    def test_singletons_reproduce_table(self, xor2):
        st = from_truth_table(xor2, SymmetryPartition.singletons(2))
        assert list(st.rows()) == [((0, 0), False), ((0, 1), True), ((1, 0), True), ((1, 1), False)]

    def test_not_symmetric_reports_witness(self):
        """x1 and not x2 differs on assignments 1 and 2, which share count 1."""
        tt = TruthTable.from_function(2, lambda a, b: a and not b)
        with pytest.raises(NotSymmetricError) as exc_info:
            from_truth_table(tt, SymmetryPartition(groups=((1, 2),)))
        assert exc_info.value.witness == (1, 2)

    def test_partition_size(self, or3):
        with pytest.raises(DimensionError):
            from_truth_table(or3, SymmetryPartition.singletons(2))


class TestToTruthTable:

    def test_or3(self, or3):
        st = from_truth_table(or3, WHOLE_3)
        assert to_truth_table(st, WHOLE_3).hex().upper() == "FE"

    def test_majority_expands(self):
        st = SymTable([3], [0, 0, 1, 1])
        assert to_truth_table(st, WHOLE_3).hex().upper() == "E8"

    def test_round_trip(self, layered_ncf):
        normalized = normalize(layered_ncf)
        partition = symmetry_partition_ncf(normalized)
        tt = ncf_table(normalized)
        assert to_truth_table(from_truth_table(tt, partition), partition) == tt

    def test_size_mismatch(self):
        st = SymTable([2, 1], np.zeros((3, 2), dtype=bool))
        with pytest.raises(DimensionError):
            to_truth_table(st, SymmetryPartition.contiguous([1, 2]))


class TestFindCanalyzing:

    def test_or3(self, or3):
        finding = find_canalyzing(from_truth_table(or3, WHOLE_3))
        assert (finding.group_index, finding.canalyzing, finding.canalyzed) == (1, True, True)

    def test_majority(self, majority3):
        assert find_canalyzing(from_truth_table(majority3, WHOLE_3)) is None

    def test_parity(self, xor2):
        assert find_canalyzing(from_truth_table(xor2, SymmetryPartition(groups=((1, 2),)))) is None

    def test_lowest_group_first(self):
        """Only the second group of x1 xor x2 or x3 is canalyzing."""
        tt = TruthTable.from_function(3, lambda a, b, c: (a ^ b) or c)
        partition = SymmetryPartition(groups=((1, 2), (3,)))
        finding = find_canalyzing(from_truth_table(tt, partition))
        assert (finding.group_index, finding.canalyzing, finding.canalyzed) == (2, True, True)


class TestRecognize:

    def test_or3(self, or3):
        stats = RecognitionStats()
        result = recognize_ncf(from_truth_table(or3, WHOLE_3), WHOLE_3, stats)
        assert isinstance(result, NcfRepr)
        assert render_ncf(result) == OR3
        assert stats.mu_history == [4, 1]
        assert stats.iterations == 1

    def test_majority(self, majority3):
        result = recognize_ncf(from_truth_table(majority3, WHOLE_3), WHOLE_3)
        assert isinstance(result, NotNcf)
        assert str(result).startswith("NOT-NCF")

    def test_constant_is_rejected(self):
        tt = TruthTable.constant(3, True)
        result = recognize_ncf(from_truth_table(tt, WHOLE_3), WHOLE_3)
        assert result == NotNcf(reason="does not depend on all variables")

    def test_ignored_variable_is_rejected(self):
        tt = TruthTable.from_function(3, lambda a, b, c: a or b)
        partition = SymmetryPartition(groups=((1, 2), (3,)))
        result = recognize_ncf(from_truth_table(tt, partition), partition)
        assert isinstance(result, NotNcf)
        assert "does not depend" in result.reason

    def test_layered_ncf(self, layered_ncf):
        """The recovered rule order may differ, the function may not."""
        normalized = normalize(layered_ncf)
        partition = symmetry_partition_ncf(normalized)
        assert partition.level == 4
        tt = ncf_table(normalized)
        result = recognize_ncf(from_truth_table(tt, partition), partition)
        assert isinstance(result, NcfRepr)
        assert ncf_table(result) == tt

    def test_table_halves_each_iteration(self, layered_ncf):
        normalized = normalize(layered_ncf)
        partition = symmetry_partition_ncf(normalized)
        st = from_truth_table(ncf_table(normalized), partition)
        stats = RecognitionStats()
        recognize_ncf(st, partition, stats)
        assert stats.mu_history[0] == st.row_count == 2 * 3 * 3 * 2
        for before, after in zip(stats.mu_history, stats.mu_history[1:]):
            assert 2 * after <= before
        assert stats.row_visits <= 5 * partition.level * st.row_count

    def test_partition_mismatch(self, or3):
        with pytest.raises(DimensionError):
            recognize_ncf(from_truth_table(or3, WHOLE_3), SymmetryPartition.singletons(3))


class TestTextFormat:

    def test_parse_or3(self):
        st = parse_symtable(OR3_COUNTS)
        assert st.group_sizes == (3,)
        assert st.values.tolist() == [False, True, True, True]

    def test_render_round_trip(self):
        assert render_symtable(parse_symtable(OR3_COUNTS)) == OR3_COUNTS

    def test_comments_allowed(self):
        assert parse_symtable(MAJORITY3_COUNTS).values.tolist() == [False, False, True, True]

    def test_two_groups(self):
        text = "groups: 1,2\n0,0: 0\n0,1: 0\n0,2: 1\n1,0: 1\n1,1: 1\n1,2: 1\n"
        st = parse_symtable(text)
        assert st.values.shape == (2, 3)
        assert render_symtable(st) == text

    @pytest.mark.parametrize("text,message", [
        ("groups: 3\n0: 0\n1: 1\n1: 1\n2: 1\n3: 1\n", "duplicate"),
        ("groups: 3\n0: 0\n1: 1\n3: 1\n", "missing row 2"),
        ("groups: 3\n0: 0\n2: 1\n1: 1\n3: 1\n", "out of order"),
        ("groups: 1,1\n0,0: 0\n1,0: 1\n0,1: 1\n1,1: 1\n", "0,1 is out of order"),
        ("groups: 3\n0: 0\n1: 1\n2: 1\n4: 1\n", "exceeds"),
        ("groups: 1,1\n0: 0\n", "counts"),
        ("0: 0\n", "header"),
        ("groups: 0\n0: 1\n", "positive"),
        ("groups: 2\n0: 2\n", "expected"),
        ("", "header"),
    ])
    def test_malformed(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_symtable(text)
