import io
import json
from importlib import resources

import pytest

from pretropisms.cli import bench_rows, format_table, main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def square_pair():
    with resources.as_file(resources.files("pretropisms.data") / "square_pair.poly") as p:
        yield str(p)


def test_compute_square_pair(square_pair):
    code, out, err = run("compute", square_pair, "--jobs", "1")
    assert code == 0
    assert out.splitlines() == ["-1 0", "0 -1", "0 1", "1 0"]
    assert err == ""


def test_compute_stats_go_to_stderr(square_pair):
    code, out, err = run("compute", square_pair, "--jobs", "1", "--stats")
    assert code == 0 and len(out.splitlines()) == 4
    assert "intersections:" in err and "pretropisms: 4" in err


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.poly"
    bad.write_text("vars x y;\nx + y;\nx * * y;\n")
    code, out, err = run("compute", str(bad))
    assert code == 3 and out == ""
    assert "line 3" in err


def test_missing_file_and_dimension_errors(tmp_path):
    assert run("compute", str(tmp_path / "absent.poly"))[0] == 3
    mixed = tmp_path / "mixed.sup"
    mixed.write_text('{"dim": 2, "supports": [[[0, 0], [1, 0]], [[0, 0, 1]]]}')
    assert run("compute", str(mixed))[0] == 4
    single = tmp_path / "one.poly"
    single.write_text("x + y + 1;\n")
    assert run("compute", str(single))[0] == 4


def test_usage_error():
    assert run("compute")[0] == 2
    assert run("frobnicate")[0] == 2


def test_oracle_check_matches():
    code, out, err = run("oracle", "gen:simplices:n=4:seed=11", "--check", "--jobs", "1")
    assert code == 0
    assert err.strip().splitlines()[-1] == "MATCH"
    code2, out2, _ = run("compute", "gen:simplices:n=4:seed=11", "--jobs", "1")
    assert out == out2


def test_gen_cyclic_reduced():
    code, out, _ = run("gen", "cyclic-reduced", "7")
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 6 and len(doc["supports"]) == 6


def test_gen_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.sup", tmp_path / "b.sup"
    assert run("gen", "simplices", "5", "--seed", "3", "-o", str(a))[0] == 0
    assert run("gen", "simplices", "5", "--seed", "3", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run("compute", str(a), "--jobs", "1")
    assert code == 0


def test_gen_as_poly_round_trips(tmp_path):
    path = tmp_path / "c.poly"
    run("gen", "cyclic-reduced", "5", "--as-poly", "-o", str(path))
    _, via_poly, _ = run("compute", str(path), "--jobs", "1")
    _, via_gen, _ = run("compute", "gen:cyclic-reduced:n=5", "--jobs", "1")
    assert via_poly == via_gen


def test_report_is_deterministic(tmp_path):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run("compute", "gen:cyclic-reduced:n=6", "--jobs", "1", "--report", str(r1))
    run("compute", "gen:cyclic-reduced:n=6", "--jobs", "1", "--report", str(r2))
    assert r1.read_bytes() == r2.read_bytes()
    doc = json.loads(r1.read_text())
    assert doc["num_rays"] == 8 and "wall_time_seconds" not in doc
    r3 = tmp_path / "r3.json"
    run("compute", "gen:cyclic-reduced:n=6", "--jobs", "1", "--report", str(r3), "--timing")
    assert "wall_time_seconds" in json.loads(r3.read_text())


def test_first_positive_flag():
    _, out, _ = run("compute", "gen:cyclic-reduced:n=6", "--jobs", "1", "--first-positive")
    rays = [list(map(int, line.split())) for line in out.splitlines()]
    assert rays and all(r[0] > 0 for r in rays)


def test_bench_rows_for_reduced_cyclic():
    rows = bench_rows("cyclic-reduced", range(4, 9), max_oracle_n=6)
    assert [r["predicted_ratio"] for r in rows] == [0.25, 0.125, 0.0625, 0.03125, 0.015625]
    assert [r["pretropisms"] for r in rows] == [2, 0, 8, 28, 94]
    assert rows[-1]["definitional"] is None and rows[-1]["actual_ratio"] is None
    table = format_table(rows)
    assert table.splitlines()[0].split()[:2] == ["n", "definitional"]
    assert len(table.splitlines()) == 6


def test_bench_trials_are_deterministic(tmp_path):
    j1, j2 = tmp_path / "b1.json", tmp_path / "b2.json"
    c1, t1, _ = run("bench", "simplices", "3..4", "--trials", "3", "--seed", "1", "--jobs", "1", "--json", str(j1))
    c2, t2, _ = run("bench", "simplices", "3..4", "--trials", "3", "--seed", "1", "--jobs", "1", "--json", str(j2))
    assert c1 == c2 == 0 and t1 == t2
    assert j1.read_bytes() == j2.read_bytes()
    assert json.loads(j1.read_text())["rows"][0]["trials"] == 3
