import json

import pytest

from hallforge.cli import main


@pytest.fixture
def jordan_file(tmp_path):
    path = tmp_path / "jordan.json"
    path.write_text(json.dumps({"vertices": ["1"], "arrows": [{"src": "1", "tgt": "1"}]}))
    return str(path)


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(
        json.dumps({"vertices": ["1", "2"], "arrows": [{"src": "1", "tgt": "2"}]})
    )
    return str(path)


def test_cartan_command(jordan_file, capsys):
    assert main(["cartan", "--quiver", jordan_file]) == 0
    assert json.loads(capsys.readouterr().out) == {"a": [[0]]}


def test_malformed_quiver_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["cartan", "--quiver", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "config" in err


def test_enum_full_mode_counts(jordan_file, capsys):
    assert main(["enum", "--quiver", jordan_file, "--q", "2", "--mode", "full", "--dim", "1"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 2  # one simple per loop scalar


def test_enum_rejects_bad_q(jordan_file, capsys):
    assert main(["enum", "--quiver", jordan_file, "--q", "4", "--dim", "1"]) == 2


def test_hall_command(a2_file, capsys):
    assert main(["hall", "--quiver", a2_file, "--q", "2", "--dim-x", "1,0", "--dim-z", "0,1"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["y"].split(":")[1] for r in rows} == {"1,1"}
    assert all(r["hall_number"] == 1 for r in rows)


def test_verify_suite_exit_zero_and_report(a2_file, capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(
        [
            "verify",
            "--suite",
            "bb-relations",
            "--quiver",
            a2_file,
            "--q",
            "2",
            "--max-level",
            "2",
            "--max-degree",
            "4",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0 and report["summary"]["pass"] > 0
    assert all("check" in row for row in report["results"])


def test_verify_parallel_matches_serial(a2_file, capsys):
    assert main(["verify", "--suite", "bb-relations", "--quiver", a2_file, "--q", "2"]) == 0
    serial = json.loads(capsys.readouterr().out)["results"]
    assert (
        main(["verify", "--suite", "bb-relations", "--quiver", a2_file, "--q", "2", "--jobs", "3"])
        == 0
    )
    parallel = json.loads(capsys.readouterr().out)["results"]
    strip = lambda rows: [(r["check"], str(r["params"]), r["status"]) for r in rows]
    assert strip(serial) == strip(parallel)


def test_qcombinatorics_suite(capsys, a2_file):
    assert main(["verify", "--suite", "qcombinatorics", "--quiver", a2_file, "--q", "2"]) == 0


def test_mul_reduce_reflect_roundtrip(a2_file, capsys):
    # enumerate to obtain stable ids
    assert main(["enum", "--quiver", a2_file, "--q", "2", "--dim", "0,1"]) == 0
    s2_id = json.loads(capsys.readouterr().out)[0]["id"]
    elem = json.dumps(
        [{"A": s2_id, "B": s2_id.replace("0,1", "0,0"), "alpha": [0, 0], "beta": [0, 0],
          "coeff": {"a": "1/1", "b": "0/1", "q": 2}}]
    )
    # need the zero class id: enumerate dim 0,0
    assert main(["enum", "--quiver", a2_file, "--q", "2", "--dim", "0,0"]) == 0
    zero_id = json.loads(capsys.readouterr().out)[0]["id"]
    elem = json.dumps(
        [{"A": s2_id, "B": zero_id, "alpha": [0, 0], "beta": [0, 0],
          "coeff": {"a": "1/1", "b": "0/1", "q": 2}}]
    )
    assert main(["mul", "--quiver", a2_file, "--q", "2", "--elem1", elem, "--elem2", elem]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 1 and rows[0]["A"].endswith("0,2:0")

    cx = json.dumps(
        {
            "M0": {"dims": [0, 1], "mats": [[[]]]},
            "M1": {"dims": [0, 1], "mats": [[[]]]},
            "d0": [[], [[1]]],
            "d1": [[], [[0]]],
        }
    )
    assert main(["reduce", "--quiver", a2_file, "--q", "2", "--cx", cx]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["alpha"] == [0, 1] and rows[0]["beta"] == [0, 0]

    assert main(["reflect", "--quiver", a2_file, "--q", "2", "--vertex", "2", "--elem", elem]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows and rows[0]["beta"] == [0, -1]


def test_braid_rank2_cli(a2_file, capsys):
    assert main(["braid", "--quiver", a2_file, "--q", "2", "--suite", "rank2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["summary"] == {"pass": 6, "fail": 0, "skip": 0}


def test_braid_square_needs_vertex(a2_file):
    assert main(["braid", "--quiver", a2_file, "--q", "2", "--suite", "square"]) == 2
