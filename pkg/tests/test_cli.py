import subprocess
import sys

import pytest

from sparrange.cli import main
from sparrange.graph import Graph, format_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def diamond_file(tmp_path):
    p = tmp_path / "diamond.txt"
    p.write_text("# terminals s t\ns a\na t\ns b\nb t\n")
    return str(p)


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "--seed", "4", "--leaves", "9")
    b = run(capsys, "gen", "--seed", "4", "--leaves", "9")
    assert a == b and a[0] == 0 and a[1].strip().startswith(("S(", "P(", "L("))


def test_decompose(capsys, diamond_file):
    assert run(capsys, "decompose", "--edges", diamond_file)[:2] == (0, "P(L(2),L(2))\n")


def test_decompose_finds_terminals(capsys, tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("u v\nv w\n")
    assert run(capsys, "decompose", "--edges", str(p))[:2] == (0, "L(2)\n")


def test_decompose_k4_fails(capsys, tmp_path):
    p = tmp_path / "k4.txt"
    p.write_text("a b\na c\na d\nb c\nb d\nc d\n")
    code, out, err = run(capsys, "decompose", "--edges", str(p), "--source", "a", "--sink", "b")
    assert code == 2 and "error" in err


def test_arrange_edges(capsys, diamond_file):
    code, out, _ = run(capsys, "arrange", "--edges", diamond_file)
    assert code == 0
    assert out.splitlines() == ["s 1", "t 2", "a 3", "b 4", "# cost 8"]


def test_arrange_tree(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("S(L(1),P(L(1),L(1)))\n")
    code, out, _ = run(capsys, "arrange", "--tree", str(p))
    assert code == 0 and out.splitlines()[-1] == "# cost 4"


def test_arrange_rejects_lone_source(capsys, diamond_file):
    assert run(capsys, "arrange", "--edges", diamond_file, "--source", "s")[0] == 2


def test_exact(capsys, diamond_file):
    code, out, _ = run(capsys, "exact", "--edges", diamond_file)
    assert code == 0 and out.splitlines()[-1] == "# cost 6"
    assert run(capsys, "exact", "--edges", diamond_file, "--limit", "3")[0] == 2


def test_verify_tree(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("P(L(2),L(2))")
    code, out, _ = run(capsys, "verify", "--tree", str(p), "--opt")
    assert code == 0
    assert "theorem PASS 8 336" in out and "# alg 8 opt 6" in out


def test_verify_tree_reports_failure(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("S(P(L(1),L(2)),L(3))")
    code, out, _ = run(capsys, "verify", "--tree", str(p))
    assert code == 1 and "algpc FAIL 1 0" in out


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "--sweep", "5", "--max-nodes", "6", "--seed", "3")
    assert "# instances 5" in out
    assert code == (0 if out.splitlines()[-1].startswith("PASS") else 1)


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "1e3,2000", "--seed", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "# edges seconds" and len(lines) == 3


def test_stdin_and_entry_point():
    g = Graph.from_edges([("x", "y"), ("y", "z"), ("x", "z")], "x", "z")
    proc = subprocess.run([sys.executable, "-m", "sparrange.cli", "decompose", "--edges", "-"],
                          input=format_edge_list(g), capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "P(L(2),L(1))\n"
