import io
import json

import pytest

from syncperm.cli import main
from syncperm.families import cerny, cyclic
from syncperm.groups import group_automaton
from syncperm.core import Transformation
from syncperm.io import parse_automaton, serialize_automaton, serialize_group


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def c4(tmp_path):
    path = tmp_path / "c4.aut"
    path.write_text(serialize_automaton(cerny(4)))
    return str(path)


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


def test_analyze_text(c4):
    code, text = run("analyze", c4)
    assert code == 0
    f = fields(text)
    assert f["synchronizing"] == "true"
    assert f["shortest_word"] == "b a a a b a a a b"
    assert f["shortest_length"] == "9"
    assert f["completely_reachable"] == "true"
    assert f["reachable_subset_count"] == "15"
    assert f["sc_syn"] == "12" and f["sc_max"] == "12"


def test_analyze_record_and_flag_order(c4):
    code, text = run("--format", "record", "analyze", c4)
    assert code == 0
    record = json.loads(text)
    assert record["shortest_length"] == 9 and record["sc_syn"] == 12
    assert run("analyze", "--format", "record", c4)[1] == text


def test_analyze_limit(c4):
    code, _ = run("--limit-n", "3", "analyze", c4)
    assert code == 2


def test_bad_input(tmp_path):
    bad = tmp_path / "bad.aut"
    bad.write_text("states 3\nletter a 0 1\n")
    assert run("analyze", str(bad))[0] == 2
    assert run("analyze", str(tmp_path / "missing.aut"))[0] == 2
    assert run("group", "--family", "nosuch:3", "--transitive")[0] == 2
    assert run("frobnicate")[0] == 2


def test_max_sc(c4, tmp_path):
    code, text = run("max-sc", c4)
    assert code == 0 and text == "true\ncertificate: gamma1\n"
    code, text = run("max-sc", "--exact", c4)
    assert text == "true\ncertificate: exact\n"
    gap = tmp_path / "gap.aut"
    gap.write_text("states 3\nletter a 0 2 0\nletter b 1 1 2\nletter c 0 0 1\n")
    assert run("max-sc", str(gap))[1].splitlines()[0] == "true"
    assert run("max-sc", "--exact", str(gap))[1].splitlines()[0] == "false"


def test_gamma1_dot(c4):
    code, text = run("gamma1", c4)
    assert code == 0
    assert text.startswith("digraph gamma1 {")
    assert text.count("->") == 12
    record = json.loads(run("--format", "record", "gamma1", c4)[1])
    assert record["strongly_connected"] and len(record["edges"]) == 12


def test_group_cyclic5():
    code, text = run("group", "--family", "cyclic:5", "--k-homogeneous", "2", "--primitive",
                     "--sync-maximal", "--orbits", "2")
    assert code == 0
    assert "2-homogeneous: false" in text
    assert "primitive_blocks: true" in text and "primitive_reach: true" in text
    assert "sync_maximal: true" in text
    assert "orbit 0: {0,1} {0,4} {1,2} {2,3} {3,4}" in text
    assert "orbit 1: {0,2} {0,3} {1,3} {1,4} {2,4}" in text


def test_group_witness_replay(tmp_path):
    path = tmp_path / "c4.grp"
    path.write_text(serialize_group(cyclic(4)))
    code, text = run("--format", "record", "group", str(path), "--primitive")
    assert code == 0
    record = json.loads(text)
    assert record["primitive_blocks"] is False and record["primitive_reach"] is False
    f = Transformation(record["witness_f"])
    assert f.is_idempotent() and f.rank() == 3
    a = group_automaton(cyclic(4), f)
    aut = tmp_path / "witness.aut"
    aut.write_text(serialize_automaton(a))
    report = json.loads(run("--format", "record", "analyze", str(aut))[1])
    assert report["completely_reachable"] is False


def test_group_needs_input():
    assert run("group", "--transitive")[0] == 2


def test_generate_and_verify(tmp_path):
    out = tmp_path / "corpus"
    code, text = run("--seed", "3", "generate", "--out", str(out), "--family", "cerny:5",
                     "--family", "cyclic:4", "--random", "4", "--max-states", "4")
    assert code == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["cerny-5.aut", "cyclic-4.grp", "random-0.aut", "random-1.aut", "random-2.aut",
                     "random-3.aut"]
    assert parse_automaton((out / "cerny-5.aut").read_text()) == cerny(5)
    first = run("--seed", "3", "generate", "--out", str(tmp_path / "again"), "--random", "4",
                "--max-states", "4")
    assert (tmp_path / "again" / "random-2.aut").read_text() == (out / "random-2.aut").read_text()
    assert first[0] == 0
    code, text = run("verify-theorems", str(out))
    assert code == 0
    assert text.splitlines()[-1].endswith("0 failed")


def test_search_counterexample():
    code, text = run("search-counterexample", "--max-degree", "5")
    assert code == 0
    assert text.splitlines()[-1] == "counterexamples: 0"
    assert "agl15: primitive, sync-maximal" in text
