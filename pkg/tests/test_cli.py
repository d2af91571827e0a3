import io
import subprocess
import sys

import pytest

from latticemorph.cli import NO_ANALYSIS, main
from latticemorph.lattice import read_lattice

from conftest import fixture

CIWUL_LEX = ["--dict", str(fixture("ciwul_dict.tsv")), "--morph-matrix", str(fixture("ciwul_morph.tsv")),
        "--phon-matrix", str(fixture("ciwul_phon.tsv")), "--tags", str(fixture("ciwul_tags.tsv"))]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inventory(capsys):
    code, out, _ = run(capsys, "inventory")
    assert code == 0
    assert out.splitlines() == ["V\t21", "C1V\t378", "VC2\t147", "C2C1\t126", "total\t672"]


def test_inventory_groups(capsys):
    _, out, _ = run(capsys, "inventory", "--groups")
    groups = [l for l in out.splitlines() if l.startswith("group")]
    assert len(groups) == 18 and groups[-1].split("\t")[1] == "CC"


def test_analyze_ciwul_with_trace(capsys):
    code, out, err = run(capsys, "analyze", "--lattice", str(fixture("ciwul.lat")), *CIWUL_LEX, "--trace")
    assert code == 0
    assert out.splitlines() == ["ci-wu+l+swu\tregular verb,adnominalizing verb-ending,bound-noun"]
    seeds = [l.split()[2] for l in err.splitlines() if l.startswith("trace seed")]
    assert seeds == ["(0,3)", "(3,4)", "(4,6)"]


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "--text", "pha-il-tul-ul")
    assert code == 0
    assert "pha-il+tul+ul\tnoun,suffix-plural,postposition-object" in out.splitlines()


def test_analyze_several_eojeols(capsys):
    _, out, _ = run(capsys, "analyze", "--text", "na-nun pha-il-ul")
    lines = out.splitlines()
    assert lines[0] == "# na-nun" and "# pha-il-ul" in lines


def test_analyze_no_analysis(capsys):
    code, out, _ = run(capsys, "analyze", "--text", "kka-kka", *CIWUL_LEX)
    assert code == 0 and out.strip() == NO_ANALYSIS


@pytest.mark.parametrize("argv", [
    ["analyze", "--text", "ci-wu", "--dict", "/nonexistent/dict.tsv"],
    ["analyze"],
    ["analyze", "--text", "qqq"],
    ["simulate", "--text", "a b"],
    ["simulate", "--text", "a", "--insert-rate", "2"],
    ["decode"],
    ["analyze", "--text", "a", "--min-count", "0"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("nodes 3\n0 1 a\n2 2 b\n")
    code, _, err = run(capsys, "analyze", "--lattice", str(bad))
    assert code == 2 and "line 3" in err


def test_simulate_then_decode(capsys, tmp_path):
    stream = tmp_path / "s.txt"
    assert run(capsys, "simulate", "--text", "ci-wul-sswu", "--out", str(stream))[0] == 0
    code, out, err = run(capsys, "decode", "--stream", str(stream))
    assert code == 0
    lat = read_lattice(io.StringIO(out))
    assert lat.num_nodes == 7 and lat.path_count() == 1
    assert "nodes 7 edges 6 paths 1" in err


def test_decode_empty_stream(capsys, tmp_path):
    empty = tmp_path / "e.txt"
    empty.write_text("")
    assert run(capsys, "decode", "--stream", str(empty))[0] == 2


def test_decode_min_count_one_keeps_all_runs(capsys, tmp_path):
    stream = tmp_path / "s.txt"
    stream.write_text("0 V a\n1 V a\n1 V o\n2 V a\n")
    _, pruned, _ = run(capsys, "decode", "--stream", str(stream))
    _, kept, _ = run(capsys, "decode", "--stream", str(stream), "--min-count", "1")
    assert read_lattice(io.StringIO(pruned)).spellings() == {("a",)}
    assert read_lattice(io.StringIO(kept)).spellings() == {("a",), ("o",)}


def test_experiment_clean_is_perfect(capsys):
    code, out, _ = run(capsys, "experiment", "--format", "tsv")
    assert code == 0
    rows = {l.split("\t")[0]: l.split("\t")[1:] for l in out.splitlines()}
    total, correct, deleted, inserted = map(int, rows["morpheme"])
    assert total == correct > 0 and deleted == 0
    assert rows["errors"] == ["0"]


def test_experiment_deterministic(capsys):
    flags = ["experiment", "--insert-rate", "0.386", "--delete-rate", "0.066"]
    a = run(capsys, *flags, "--seed", "1")[1]
    b = run(capsys, *flags, "--seed", "1")[1]
    c = run(capsys, *flags, "--seed", "2")[1]
    assert a == b
    assert "morpheme level" in c


def test_experiment_writes_out(capsys, tmp_path):
    target = tmp_path / "r.txt"
    run(capsys, "experiment", "--out", str(target))
    assert "diphone level" in target.read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "latticemorph", "inventory"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("V\t21")
