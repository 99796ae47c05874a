from __future__ import annotations

import json

import pytest

from delpezzo_codes import cli
from delpezzo_codes.code import analyze
from delpezzo_codes.families import ExpectedParameters, build_instance


def _build(tmp_path, *args):
    out = tmp_path / "bundle"
    rc = cli.main(["build", *args, "--out", str(out)])
    return rc, out


def test_build_json_shape(tmp_path):
    rc, out = _build(tmp_path, "deg6-a1", "--q", "4")
    assert rc == 0
    data = json.loads(out.read_text())
    assert (data["k"], data["n"]) == (7, 17)
    assert len(data["matrix"]) == 7 and all(len(r) == 17 for r in data["matrix"])
    assert data["field"] == {"p": 2, "e": 2, "modulus": [1, 1, 1]}


def test_build_d5_csv(tmp_path):
    rc, out = _build(tmp_path, "deg4-d5", "--q", "3", "--alpha", "1", "--beta", "2", "--format", "csv")
    assert rc == 0
    lines = out.read_text().splitlines()
    header = json.loads(lines[0][2:])
    assert (header["k"], header["n"]) == (5, 13)
    assert len(lines) == 1 + 5 and all(len(line.split(",")) == 13 for line in lines[1:])


@pytest.mark.parametrize("family,q", [("deg6-a1", "2"), ("deg4-a1", "3")])
def test_build_excluded_q(tmp_path, capsys, family, q):
    rc, _ = _build(tmp_path, family, "--q", q)
    assert rc == 2
    assert "requires q not in" in capsys.readouterr().err


def test_build_bad_inputs(tmp_path):
    assert _build(tmp_path, "deg9-z", "--q", "3")[0] == 2
    assert _build(tmp_path, "deg6-a1", "--q", "6")[0] == 2


def test_determinism(tmp_path):
    for fmt in ("json", "csv"):
        a = tmp_path / f"a.{fmt}"
        b = tmp_path / f"b.{fmt}"
        for path in (a, b):
            assert cli.main(["build", "deg3-3a2", "--q", "4", "--format", fmt, "--out", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_round_trip_matches_in_memory(tmp_path, capsys, fmt):
    rc, out = _build(tmp_path, "deg5-2a1", "--q", "3", "--format", fmt)
    capsys.readouterr()
    assert cli.main(["analyze", str(out)]) == 0
    from_file = json.loads(capsys.readouterr().out)
    in_memory = json.loads(analyze(build_instance("deg5-2a1", 3)).to_json())
    assert from_file == in_memory
    assert from_file["d_min"] == 5


def test_analyze_deleted_row_is_flagged(tmp_path, capsys):
    _, out = _build(tmp_path, "deg6-a1", "--q", "3")
    data = json.loads(out.read_text())
    data["matrix"].pop()
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert cli.main(["analyze", str(out)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["k_effective"] == 6
    assert report["bound_checks"]["dimension"] is False
    assert not report["ok"]


def test_analyze_extra_column_is_malformed(tmp_path, capsys):
    _, out = _build(tmp_path, "deg6-a1", "--q", "3")
    data = json.loads(out.read_text())
    data["matrix"] = [row + [0] for row in data["matrix"]]
    out.write_text(json.dumps(data))
    assert cli.main(["analyze", str(out)]) == 3
    assert "header says n" in capsys.readouterr().err


@pytest.mark.parametrize("text", ["not a bundle", "{\"format\": \"other\"}", "# {}\n1,2\n"])
def test_analyze_garbage(tmp_path, text):
    path = tmp_path / "bad"
    path.write_text(text)
    assert cli.main(["analyze", str(path)]) == 3


def test_analyze_missing_file(tmp_path):
    assert cli.main(["analyze", str(tmp_path / "absent.json")]) == 3


def test_analyze_budget(tmp_path):
    header = {
        "format": cli.FORMAT_TAG, "family": None, "q": 9, "field": {"p": 3, "e": 2, "modulus": [1, 0, 1]},
        "k": 9, "n": 2, "expected": None,
    }
    path = tmp_path / "big.json"
    path.write_text(json.dumps({**header, "matrix": [[1, 0]] * 9}))
    assert cli.main(["analyze", str(path)]) == 4


def test_verify_grid(capsys):
    assert cli.main(["verify", "--q", "3,4,5"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 8 * 3 - 1  # deg4-a1 is skipped at q = 3
    assert out.count("SKIP") == 1


def test_verify_q2_skips(capsys):
    assert cli.main(["verify", "--q", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    skipped = {line.split()[0] for line in lines[1:] if "SKIP" in line}
    assert skipped == {"deg6-a1", "deg4-a1", "deg4-4a1", "deg4-a2", "deg3-a1"}


def test_verify_forced_failure(monkeypatch, capsys):
    real = cli.expected_parameters

    def perturbed(family, q):
        e = real(family, q)
        if family == "deg6-a1":
            return ExpectedParameters(e.n, e.k, e.d + 1, e.exact, e.nq1)
        return e

    monkeypatch.setattr(cli, "expected_parameters", perturbed)
    assert cli.main(["verify", "--q", "3"]) == 1
    assert "FAIL deg6-a1 q=3" in capsys.readouterr().out


def test_verify_parallel(tmp_path):
    out = tmp_path / "cells.json"
    assert cli.main(["verify", "--q", "3,4", "--jobs", "2", "--out", str(out)]) == 0
    cells = json.loads(out.read_text())
    assert len(cells) == 16


@pytest.mark.parametrize(
    "family,torsion,factors",
    [("deg4-4a1", [2], [1]), ("deg4-d5", [], [4]), ("deg4-a2", [], [1]), ("deg6-a1", [], [2])],
)
def test_classgroup(capsys, family, torsion, factors):
    assert cli.main(["classgroup", family]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["report"]["torsion"] == torsion
    assert out["report"]["embedding_factors"] == factors
    assert out["match"] is True


def test_classgroup_unknown(capsys):
    assert cli.main(["classgroup", "nope"]) == 2
