# tests/test_cli.py
import pytest

from ncfsym.cli import main
from ncfsym.ncf import make_fn_example, render_ncf

from .samples import (
    BLOCK_SWAP_TABLE,
    CONTRADICTION_CNF,
    LAYERED_NCF,
    LAYERED_NCF_NORMALIZED,
    MAJORITY3_COUNTS,
    OR3,
    OR3_COUNTS,
    SMALL_NCF,
    UNIT_CNF,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def machine_line(out):
    return out.strip().splitlines()[-1]


class TestNormalize:

    def test_layered_ncf(self, capsys, write_file):
        code, out, _ = run(capsys, "normalize", write_file("layered.ncf", LAYERED_NCF))
        assert code == 0
        assert out == LAYERED_NCF_NORMALIZED

    def test_already_normalized(self, capsys, write_file):
        code, out, _ = run(capsys, "normalize", write_file("normalized.ncf", LAYERED_NCF_NORMALIZED))
        assert code == 0
        assert out == LAYERED_NCF_NORMALIZED

    def test_canonical(self, capsys, write_file):
        path = write_file("mixed.ncf", "x2: 1 -> 1\nx1: 1 -> 1\ndefault: 0\n")
        code, out, _ = run(capsys, "normalize", "--canonical", path)
        assert code == 0
        assert out == "x1: 1 -> 1\nx2: 1 -> 1\ndefault: 0\n"

    def test_malformed_default(self, capsys, write_file):
        path = write_file("bad.ncf", "x1: 1 -> 1\nx2: 1 -> 1\ndefault: 1\n")
        code, out, err = run(capsys, "normalize", path)
        assert code == 2
        assert out == ""
        assert "line 3" in err


class TestAnalyze:

    def test_layered_ncf(self, capsys, write_file):
        code, out, _ = run(capsys, "analyze", write_file("layered.ncf", LAYERED_NCF))
        assert code == 0
        assert machine_line(out) == "n=6 q=2 r1=0 r2=2 level=4 strong=0"
        assert "symmetry groups: {x1} {x2,x3} {x4,x5} {x6}" in out

    def test_fn_family(self, capsys, write_file):
        code, out, _ = run(capsys, "analyze", write_file("f6.ncf", render_ncf(make_fn_example(6))))
        assert code == 0
        assert machine_line(out) == "n=6 q=5 r1=4 r2=1 level=6 strong=1"

    def test_or3(self, capsys, write_file):
        code, out, _ = run(capsys, "analyze", write_file("or3.ncf", OR3))
        assert code == 0
        assert machine_line(out) == "n=3 q=1 r1=1 r2=0 level=1 strong=0"
        assert "truth table: n=3 tt=fe" in out

    def test_deterministic(self, capsys, write_file):
        path = write_file("layered.ncf", LAYERED_NCF)
        first = run(capsys, "analyze", path)
        second = run(capsys, "analyze", path)
        assert first == second


class TestEvalAndTable:

    def test_eval(self, capsys, write_file):
        path = write_file("small.ncf", SMALL_NCF)
        assert run(capsys, "eval", path, "0")[:2] == (0, "1\n")
        assert run(capsys, "eval", path, "0b001")[:2] == (0, "0\n")

    def test_eval_range(self, capsys, write_file):
        code, _, err = run(capsys, "eval", write_file("small.ncf", SMALL_NCF), "8")
        assert code == 2
        assert "out of range" in err

    def test_to_table(self, capsys, write_file):
        code, out, _ = run(capsys, "to-table", write_file("small.ncf", SMALL_NCF))
        assert code == 0
        assert out == "n=3 tt=45\n"

    def test_inspect_block_swap(self, capsys, write_file):
        code, out, _ = run(capsys, "inspect", write_file("swap.tt", BLOCK_SWAP_TABLE + "\n"))
        assert code == 0
        assert "invariant under 3 4 1 2" in out
        assert machine_line(out) == "n=4 level=4 canalyzing=0 ncf=0 strong=0"

    def test_inspect_ncf(self, capsys, write_file):
        code, out, _ = run(capsys, "inspect", write_file("small.tt", "n=3 tt=45\n"))
        assert code == 0
        assert "nested canalyzing: yes" in out
        assert machine_line(out).endswith("ncf=1 strong=1")


class TestRecognize:

    def test_or3(self, capsys, write_file):
        code, out, _ = run(capsys, "recognize", write_file("or3.sym", OR3_COUNTS))
        assert code == 0
        assert out == OR3

    def test_majority(self, capsys, write_file):
        code, out, _ = run(capsys, "recognize", write_file("maj.sym", MAJORITY3_COUNTS))
        assert code == 1
        assert out.startswith("NOT-NCF")

    def test_duplicate_row(self, capsys, write_file):
        path = write_file("dup.sym", "groups: 1\n0: 0\n0: 0\n1: 1\n")
        code, _, err = run(capsys, "recognize", path)
        assert code == 2
        assert "duplicate" in err


class TestEnumerate:

    def test_check_small(self, capsys):
        code, out, _ = run(capsys, "enumerate", "3", "--check")
        assert code == 0
        assert "strong=24 " in machine_line(out)
        assert "check: strong count matches n!*2^(n-1)" in out

    def test_check_reports_closed_form_mismatch(self, capsys):
        code, out, _ = run(capsys, "enumerate", "4", "--check")
        assert code == 1
        assert "strong=240 " in machine_line(out)
        assert "check: MISMATCH, expected n!*2^(n-1) = 192" in out
        assert "check: strong count matches the count over all layer patterns = 240" in out

    def test_over_cap(self, capsys):
        code, out, err = run(capsys, "enumerate", "20")
        assert code == 3
        assert out == ""
        assert "n <= 6" in err

    def test_max_n_lowers_cap(self, capsys):
        assert run(capsys, "--max-n", "3", "enumerate", "4")[0] == 3

    def test_max_n_above_enumeration_bound(self, capsys, write_file):
        code, out, _ = run(capsys, "--max-n", "9", "inspect", write_file("t.tt", BLOCK_SWAP_TABLE))
        assert code == 0
        assert "strong=" in machine_line(out)
        code, _, err = run(capsys, "--max-n", "9", "enumerate", "9")
        assert code == 3
        assert "n <= 8" in err

    def test_verbose_logs_operation_stats(self, capsys, tmp_path):
        log_file = tmp_path / "ncfsym.log"
        code, _, _ = run(capsys, "-v", "--log-file", str(log_file), "enumerate", "2")
        assert code == 0
        assert "enumerate_ncfs: 1 calls, 0 failed" in log_file.read_text()


    def test_jobs(self, capsys):
        serial = run(capsys, "enumerate", "3")
        parallel = run(capsys, "enumerate", "3", "--jobs", "2")
        assert serial == parallel


class TestHardness:

    def test_gen(self, capsys, write_file):
        code, out, _ = run(capsys, "hardness", "gen", write_file("g.cnf", CONTRADICTION_CNF), "--rho", "1")
        assert code == 0
        assert "p cnf 5 4" in out
        assert out.endswith("1 0\n-1 0\n2 -4 0\n3 -5 0\n")

    def test_gen_output_file(self, capsys, write_file, tmp_path):
        target = tmp_path / "f.cnf"
        code, out, _ = run(capsys, "hardness", "gen", write_file("g.cnf", UNIT_CNF), "-o", str(target))
        assert code == 0
        assert out == ""
        assert "p cnf 5 3" in target.read_text()

    def test_verify_unsat(self, capsys, write_file):
        code, out, _ = run(capsys, "hardness", "verify", write_file("g.cnf", CONTRADICTION_CNF), "--rho", "1")
        assert code == 0
        assert machine_line(out) == "sat=0 level=1 rho=1 ok=1"

    def test_verify_sat(self, capsys, write_file):
        code, out, _ = run(capsys, "hardness", "verify", write_file("g.cnf", UNIT_CNF))
        assert code == 0
        assert machine_line(out).startswith("sat=1 ")
        assert machine_line(out).endswith(" rho=1 ok=1")

    def test_parse_error(self, capsys, write_file):
        code, _, err = run(capsys, "hardness", "verify", write_file("g.cnf", "p cnf 1 2\n1 0\n"))
        assert code == 2
        assert "line 1" in err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["enumerate", "three"]) == 2
    capsys.readouterr()


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "normalize", str(tmp_path / "absent.ncf"))
    assert code == 2
    assert "cannot read" in err
