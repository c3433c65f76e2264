import subprocess
import sys

import pytest

from threshold_edit.cli import NO, OK, TIMEOUT, USAGE, run_cli
from threshold_edit.formats import parse_graph, parse_instance, parse_solution, read_instance_meta
from threshold_edit.recognition import is_chain, is_threshold

P4 = "4 3\n0 1\n1 2\n2 3\n"
C4 = "4 4\n0 1\n1 2\n2 3\n0 3\n"


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = run_cli(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSolve:
    def test_p4(self, files, capsys):
        code, out, _ = run(capsys, "solve", "--target", "threshold", "--variant", "edit", "-k", "1", files("p4.graph", P4))
        sol = parse_solution(out)
        assert code == OK and sol.k_used == 1 and sol.status == "optimal"

    def test_c4_no(self, files, capsys):
        code, out, _ = run(capsys, "solve", "--target", "threshold", "--variant", "edit", "-k", "0", files("c4.graph", C4))
        assert code == NO and out.strip() == "NO"

    def test_output_file(self, files, capsys, tmp_path):
        target = tmp_path / "p4.sol"
        code, out, _ = run(capsys, "solve", "-k", "1", "-o", str(target), files("p4.graph", P4))
        assert code == OK and out.strip() == "optimum 1" and parse_solution(target.read_text()).k_used == 1

    def test_engines_agree(self, files, capsys):
        path = files("c4.graph", C4)
        outs = {run(capsys, "solve", "-k", "2", "--engine", e, path)[1] for e in ("auto", "subexp", "peel")}
        assert len({parse_solution(o).k_used for o in outs}) == 1

    def test_time_limit_exit_code(self, tmp_path, capsys):
        path = tmp_path / "big.graph"
        run(capsys, "gen", "--seed", "0", "-n", "40", "-r", "12", "-o", str(path))
        code, _, err = run(capsys, "solve", "--time-limit", "0", str(path))
        assert code == TIMEOUT and "time limit" in err

    def test_chordal_rejected(self, files, capsys):
        code, _, err = run(capsys, "solve", "--target", "chordal", "-k", "1", files("p4.graph", P4))
        assert code == USAGE


class TestOracleAndVerify:
    def test_oracle(self, files, capsys):
        code, out, _ = run(capsys, "oracle", "-k", "1", files("p4.graph", P4))
        assert code == OK and parse_solution(out).k_used == 1

    def test_verify_accepts(self, files, capsys):
        g = files("p4.graph", P4)
        _, sol, _ = run(capsys, "solve", "-k", "1", g)
        code, out, _ = run(capsys, "verify", g, files("p4.sol", sol))
        assert code == OK and out.strip() == "accepted"

    def test_verify_rejects_class(self, files, capsys):
        code, out, _ = run(capsys, "verify", files("c4.graph", C4), files("s", "0 edit threshold optimal\n"))
        assert code == NO and out.startswith("rejected: class")

    def test_verify_rejects_sign(self, files, capsys):
        code, out, _ = run(capsys, "verify", files("p4.graph", P4), files("s", "1 edit threshold optimal\n+ 0 1\n"))
        assert code == NO and "sign" in out

    def test_verify_budget_override(self, files, capsys):
        g = files("p4.graph", P4)
        code, out, _ = run(capsys, "verify", "-k", "0", g, files("s", "1 edit threshold optimal\n+ 0 2\n"))
        assert code == NO and "budget" in out


class TestRecognizeAndKernelize:
    def test_threshold_yes(self, files, capsys):
        code, out, _ = run(capsys, "recognize", files("g", "3 2\n0 1\n0 2\n"))
        assert code == OK and out.startswith("yes")

    def test_threshold_no_with_witness(self, files, capsys):
        code, out, _ = run(capsys, "recognize", files("c4.graph", C4))
        assert code == NO and out.split()[:2] == ["no", "C4"]

    def test_chain_and_chordal(self, files, capsys):
        assert run(capsys, "recognize", "--target", "chain", files("c4.graph", C4))[0] == OK
        code, out, _ = run(capsys, "recognize", "--target", "chordal", files("c4.graph", C4))
        assert code == NO and "chordless-cycle" in out

    def test_kernelize(self, files, capsys):
        code, out, _ = run(capsys, "kernelize", "-k", "1", files("p4.graph", P4))
        inst = parse_instance(out)
        assert code == OK and inst.k == 1 and "kept" in out

    def test_kernelize_no(self, files, capsys):
        # a true-twin triangle far above 2k+2 cannot become a chain graph
        text = "9 36\n" + "".join(f"{u} {v}\n" for u in range(9) for v in range(u + 1, 9))
        code, out, _ = run(capsys, "kernelize", "--target", "chain", "-k", "1", files("k9", text))
        assert code == NO and out.strip() == "NO"


class TestReduce:
    def test_sat2te_unit(self, files, capsys, tmp_path):
        layout = tmp_path / "layout.txt"
        code, out, _ = run(capsys, "reduce", "sat2te", files("f.cnf", "p cnf 1 1\n1 0\n"), "--layout", str(layout))
        assert code == OK and read_instance_meta(out)["k"] == "2"
        assert parse_graph(out).n == 34 and layout.read_text().startswith("# threshold-edit layout v1")

    def test_ste2bce(self, files, capsys):
        code, out, _ = run(capsys, "reduce", "ste2bce", "-k", "1", files("g", "3 2\n0 1\n0 2\n"))
        assert code == OK and is_chain(parse_graph(out)).yes

    def test_bce2ce(self, files, capsys):
        code, out, _ = run(capsys, "reduce", "bce2ce", "-k", "1", files("g", "4 2\n0 1\n2 3\n"))
        assert code == OK and parse_graph(out).n == 8

    def test_bce2cce_and_cce2chordal(self, files, capsys):
        code, out, _ = run(capsys, "reduce", "bce2cce", "-k", "0", files("g", "4 2\n0 1\n2 3\n"))
        assert code == OK and parse_graph(out).m == 4
        code, out2, _ = run(capsys, "reduce", "cce2chordal", "-k", "0", files("h", out))
        assert code == OK and parse_graph(out2).n == 4 + 2 + 6

    def test_needs_budget(self, files, capsys):
        assert run(capsys, "reduce", "bce2ce", files("g", "2 1\n0 1\n"))[0] == USAGE

    def test_oversize_clause(self, files, capsys):
        code, _, err = run(capsys, "reduce", "sat2te", files("f.cnf", "p cnf 4 1\n1 2 3 4 0\n"))
        assert code == USAGE and "line 2" in err


class TestGenAndBench:
    def test_gen_zero_flips(self, capsys):
        for target, check in (("threshold", is_threshold), ("chain", is_chain)):
            code, out, _ = run(capsys, "gen", "--seed", "3", "-n", "12", "-r", "0", "--target", target)
            assert code == OK and check(parse_graph(out)).yes

    def test_gen_deterministic(self, capsys):
        a = run(capsys, "gen", "--seed", "7", "-n", "15", "-r", "4")[1]
        b = run(capsys, "gen", "--seed", "7", "-n", "15", "-r", "4")[1]
        assert a == b

    def test_solve_deterministic(self, files, capsys):
        _, text, _ = run(capsys, "gen", "--seed", "2", "-n", "12", "-r", "3")
        path = files("g", text)
        assert run(capsys, "solve", path)[1] == run(capsys, "solve", path)[1]

    def test_bench(self, capsys, monkeypatch):
        monkeypatch.setenv("THRESHOLD_EDIT_THREADS", "2")
        code, out, _ = run(capsys, "bench", "-n", "10", "-r", "1,2", "--seeds", "2")
        lines = out.strip().splitlines()
        assert code == OK and lines[0].startswith("seed\tn\tr") and len(lines) == 5
        assert [line.split("\t")[2] for line in lines[1:]] == ["1", "1", "2", "2"]


class TestErrors:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == USAGE and "usage" in err

    def test_parse_error_line(self, files, capsys):
        code, _, err = run(capsys, "recognize", files("bad", "2 1\n0 0\n"))
        assert code == USAGE and err.strip() == "error: self-loop at line 2"

    def test_missing_file(self, capsys):
        assert run(capsys, "recognize", "/nonexistent/graph")[0] == USAGE

    def test_module_entry_point(self, files):
        proc = subprocess.run([sys.executable, "-m", "threshold_edit", "solve", "-k", "0", files("c4.graph", C4)],
                              capture_output=True, text=True)
        assert proc.returncode == NO and proc.stdout.strip() == "NO"
