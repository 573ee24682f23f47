import json

import pytest

from contingency3d.cli import main
from contingency3d.random_partitions import sample_uniform
from contingency3d.tables import Table3D


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_realize_single_cell(capsys):
    code, out, _ = run(capsys, "realize", "--lambda", "1", "--mu", "1", "--nu", "1")
    assert code == 0
    assert Table3D.from_text(out).cells == frozenset({(1, 1, 1)})


def test_count_tables_example(capsys):
    code, out, _ = run(capsys, "oracle", "count-tables", "--lambda", "2", "--mu", "1,1", "--nu", "1,1")
    assert code == 0 and out.strip() == "2"


def test_pyramid_check_example(capsys):
    code, out, _ = run(capsys, "pyramid-check", "--lambda", "1,1,1,1", "--mu", "4", "--nu", "2,2")
    assert code == 2 and "fails: nu' not dominated" in out


def test_exit_codes(capsys):
    assert run(capsys, "realize", "--lambda", "2", "--mu", "2", "--nu", "2")[0] == 2
    code, _, err = run(capsys, "realize", "--lambda", "2,x", "--mu", "1", "--nu", "1")
    assert code == 1 and "'x'" in err
    assert run(capsys, "realize", "--lambda", "1")[0] == 1
    assert run(capsys, "no-such-command")[0] == 1
    code, _, _ = run(capsys, "oracle", "decide-table", "--lambda", "40", "--mu", "40", "--nu", "40",
                     "--max-cells", "10")
    assert code == 3
    assert run(capsys, "realize", "--lambda", "8", "--mu", "8", "--nu", "8",
               "--small-cutoff", "0")[0] == 3


def test_realize_then_verify(tmp_path, capsys):
    parts = [sample_uniform(3000, seed=s).to_text() for s in (1, 2, 3)]
    out = tmp_path / "t.txt"
    args = ["--lambda", parts[0], "--mu", parts[1], "--nu", parts[2]]
    assert run(capsys, "realize", *args, "-o", str(out), "--log", str(tmp_path / "log"),
               "--transport-fallback")[0] == 0
    code, text, _ = run(capsys, "verify", "--table", str(out), *args)
    assert code == 0 and text.strip() == "ok"
    code, text, _ = run(capsys, "verify", "--table", str(out), "--lambda", parts[1],
                        "--mu", parts[0], "--nu", parts[2])
    assert (code, text.splitlines()[0]) == (2, "mismatch") or parts[0] == parts[1]


def test_input_file(tmp_path, capsys):
    f = tmp_path / "in.txt"
    f.write_text("# triple\n2,1\n2,1\n1,1,1\n")
    code, out, _ = run(capsys, "realize", "--input", str(f))
    assert code == 0 and len(Table3D.from_text(out)) == 3


def test_hypergraph_and_oracle(capsys):
    code, out, _ = run(capsys, "hypergraph", "--degrees", "1,1,1")
    assert code == 0 and out.splitlines()[1] == "1 2 3"
    assert run(capsys, "hypergraph", "--degrees", "3")[0] == 2
    assert run(capsys, "oracle", "decide-hypergraph", "--degrees", "2,2,1,1")[0] == 0
    assert run(capsys, "oracle", "count-pyramids", "--lambda", "2,1", "--mu", "2,1", "--nu", "3")[1].strip() == "1"
    assert run(capsys, "linear-check", "--degrees", "6")[0] == 2
    assert run(capsys, "linear-check", "--degrees", "1,1,1")[0] == 0


@pytest.mark.parametrize("argv", [
    ["sample", "--n", "5000", "--seed", "9", "--count", "3"],
    ["shape", "--n", "2000", "--seed", "4", "--cells"],
    ["montecarlo", "--n", "300", "--trials", "6", "--experiment", "pyramid_necessary", "--seed", "1",
     "--format", "csv"],
    ["montecarlo", "--n", "300", "--trials", "4", "--experiment", "shape_assumptions", "--seed", "1"],
])
def test_seeded_outputs_are_byte_identical(argv, capsys):
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a[0] == 0 and a == b


def test_seed_is_required(capsys):
    assert run(capsys, "sample", "--n", "5")[0] == 1
    assert run(capsys, "shape", "--n", "50")[0] == 1


def test_shape_json(capsys):
    code, out, _ = run(capsys, "shape", "--partition", "3,2,1")
    d = json.loads(out)
    assert code == 0 and d["v"] == 1 and "cells" not in d
