"""End-to-end CLI behavior through run(argv): outputs and exit codes."""

import json
import os

import pytest

from sawkit.cli import run
from sawkit.graphs import load_spec_file

Z1MOD3 = ["--graph", "zd:1", "--sublattice", "3"]


def lines_of(capsys):
    out = capsys.readouterr()
    return out.out.splitlines(), out.err


def test_catalog_listing(capsys):
    assert run(["catalog"]) == 0
    out, _ = lines_of(capsys)
    assert out[0] == "name,degree,simple,kind"
    assert "zd(2),4,yes,lattice d=2 cells=1" in out
    assert any(row.startswith("tree-with-end(3),3,yes,tree") for row in out)


def test_count_ladder(capsys):
    assert run(["count", "--graph", "ladder", "--n", "3"]) == 0
    out, err = lines_of(capsys)
    assert out[0] == "n,sigma_n,a_n"
    assert out[1] == "1,3,3"
    assert out[2].startswith("2,6,")
    assert err == ""


def test_count_quotient_directed(capsys):
    assert run(["count", *Z1MOD3, "--n", "4"]) == 0
    out, _ = lines_of(capsys)
    assert [r.split(",")[1] for r in out[1:]] == ["2", "2", "0", "0"]


def test_count_walks_json(capsys):
    assert run(["count", "--graph", "zd:2", "--n", "3", "--walks",
                "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "walks" and doc["directed"] is False
    assert [r["sigma"] for r in doc["rows"]] == ["4", "16", "64"]


def test_count_truncation_note(capsys):
    assert run(["count", "--graph", "zd:2", "--n", "10",
                "--max-nodes", "300"]) == 0
    out, err = lines_of(capsys)
    assert "truncated" in err
    assert 2 <= len(out) - 1 < 10


def test_count_start_key(capsys):
    assert run(["count", "--graph", "zd:2", "--n", "2",
                "--start", "0:5,-1"]) == 0
    out, _ = lines_of(capsys)
    assert out[1] == "1,4,4"


def test_quotient_reports(capsys):
    assert run(["quotient", *Z1MOD3, "--report", "type"]) == 0
    out, _ = lines_of(capsys)
    assert out == ["type 3 (shortest directed cycle length 3)"]

    assert run(["type", *Z1MOD3, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["type"] == "3" and doc["cycle_length"] == "3"
    assert len(doc["witness"]) == 4

    assert run(["quotient", *Z1MOD3]) == 0
    out, _ = lines_of(capsys)
    assert out[1] == "orbits 3"

    assert run(["quotient", *Z1MOD3, "--report", "symmetry"]) == 0
    out, _ = lines_of(capsys)
    assert out == ["symmetric within radius 4: True"]

    assert run(["quotient", "--graph", "tree-with-end(3)", "--action",
                "child-swap", "--report", "symmetry", "--radius", "3"]) == 0
    out, _ = lines_of(capsys)
    assert out == ["symmetric within radius 3: False"]

    assert run(["quotient", "--graph", "zd:2", "--sublattice", "2 0; 0 2",
                "--report", "independence", "--radius", "6"]) == 0
    out, _ = lines_of(capsys)
    assert out == ["representative-independent within radius 6: True"]


def test_events_series(capsys):
    assert run(["events", *Z1MOD3, "--n", "4"]) == 0
    out, _ = lines_of(capsys)
    assert out[0] == "n,count"
    assert [r.split(",")[1] for r in out[1:]] == ["1", "2", "0", "0", "0"]

    assert run(["events", *Z1MOD3, "--n", "4", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["k"] == "3" and doc["r"] == "0" and doc["m"] is None
    assert "lambda_upper" in doc

    assert run(["events", *Z1MOD3, "--n", "3", "--k", "2", "--m", "0",
                "--r", "1"]) == 0
    out, _ = lines_of(capsys)
    assert [r.split(",")[1] for r in out[1:]] == ["1", "2", "2", "0"]


def test_events_grid(capsys):
    assert run(["events", *Z1MOD3, "--n", "3", "--grid",
                "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {e["k"] for e in doc["grid"]} == {1, 2, 3}
    assert {(e["k"], e["n"]) for e in doc["lambda"]} == {
        (k, n) for k in (1, 2, 3) for n in (1, 2, 3)}


def test_bounds_bridges(capsys):
    assert run(["bounds", "--dimension", "2", "--n", "6"]) == 0
    out, _ = lines_of(capsys)
    assert out[0] == "n,beta_n,b_n,provenance"
    assert out[2] == "2,3,1.7320508075688772,bridge"
    assert all(r.endswith("bridge") for r in out[1:])


def test_bounds_degree(capsys):
    assert run(["bounds", "--graph", "ladder"]) == 0
    out, _ = lines_of(capsys)
    assert out[1] == "ladder,3,1.4142135623730951,degree"


def test_ratio_verify_chain(tmp_path, capsys):
    cert = str(tmp_path / "cert.json")
    assert run(["ratio", *Z1MOD3, "--mu-exact", "1", "--budget", "10",
                "--deterministic", "--out", cert]) == 0
    payload = json.loads(open(cert).read())
    assert payload["status"] == "certified"
    assert "created" not in payload
    assert float(payload["parameters"]["ln_ratio_bound"]) < 0
    capsys.readouterr()

    assert run(["verify", cert]) == 0
    out, _ = lines_of(capsys)
    assert out[0] == "verified: certified"

    # tampering with a stored count must flip verify to a contradiction
    payload["counts"]["event_free"][2] = "999"
    with open(cert, "w") as fh:
        json.dump(payload, fh)
    assert run(["verify", cert]) == 4
    out, _ = lines_of(capsys)
    assert out[0].startswith("CONTRADICTION")


def test_ratio_inconclusive_exit_code(tmp_path, capsys):
    cert = str(tmp_path / "weak.json")
    assert run(["ratio", *Z1MOD3, "--mu-exact", "9/10", "--budget", "5",
                "--deterministic", "--out", cert]) == 3
    _, err = lines_of(capsys)
    assert "inconclusive" in err
    payload = json.loads(open(cert).read())
    assert payload["status"] == "inconclusive-budget"
    # verifying an inconclusive-but-consistent certificate exits 3
    assert run(["verify", cert]) == 3
    out, _ = lines_of(capsys)
    assert out[0] == "verified: inconclusive-budget"


def test_ratio_timestamp_only_without_deterministic(tmp_path):
    cert = str(tmp_path / "c.json")
    assert run(["ratio", *Z1MOD3, "--mu-exact", "1", "--budget", "10",
                "--out", cert]) == 0
    payload = json.loads(open(cert).read())
    keys = list(payload.keys())
    assert keys[:3] == ["format", "version", "created"]
    assert payload["created"].endswith("Z")


def test_ratio_byte_determinism(tmp_path, monkeypatch):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    args = ["ratio", *Z1MOD3, "--mu-exact", "1", "--budget", "10",
            "--deterministic"]
    assert run([*args, "--out", a]) == 0
    monkeypatch.setenv("SAW_WORKERS", "8")
    assert run([*args, "--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_out_files_are_atomic(tmp_path):
    out = str(tmp_path / "series.csv")
    assert run(["count", "--graph", "ladder", "--n", "4",
                "--out", out]) == 0
    assert os.path.exists(out)
    leftovers = [f for f in os.listdir(tmp_path) if f.endswith(".tmp")]
    assert leftovers == []


def test_augment_spec_round_trip(tmp_path, capsys):
    spec = str(tmp_path / "aug.graph")
    assert run(["augment", "--graph", "zd:2", "--chord", "0:0,0 0:1,1",
                "--out", spec]) == 0
    text = open(spec).read()
    assert text.startswith("# zd(2)+chord[")
    ga = load_spec_file(spec)
    assert ga.degree == 6
    capsys.readouterr()

    # counting on the augmented lattice straight from the flag
    assert run(["augment", "--graph", "zd:2", "--chord", "0:0,0 0:1,1",
                "--n", "3"]) == 0
    out, _ = lines_of(capsys)
    assert out[1] == "1,6,6"
    assert out[2].split(",")[1] == "30"

    assert run(["augment", "--graph", "zd:2", "--chord", "0:0,0",
                ]) == 2                              # one key, not two
    assert run(["augment", "--graph", "zd:2", "--chord", "0:0,0 0:1,1",
                "--certify"]) == 4
    _, err = lines_of(capsys)
    assert "not implemented" in err


def test_usage_errors(capsys):
    assert run([]) == 2                              # subcommand required
    assert run(["no-such-command"]) == 2
    assert run(["quotient", "--graph", "zd:1"]) == 2           # no action
    assert run(["quotient", "--graph", "zd:1", "--sublattice", "3",
                "--action", "child-swap"]) == 2                # both
    assert run(["count", "--graph", "zd:1", "--spec", "x"]) == 2
    assert run(["quotient", "--graph", "zd:1", "--sublattice", "x y"]) == 2
    assert run(["ratio", *Z1MOD3, "--mu-exact", "bogus"]) == 2
    capsys.readouterr()


def test_domain_errors(capsys, tmp_path):
    assert run(["count", "--graph", "nonesuch"]) == 4
    assert run(["bounds", "--dimension", "0"]) == 4
    assert run(["verify", str(tmp_path / "missing.json")]) == 4
    assert run(["count", "--graph", "zd:1", "--n", "-3"]) == 4
    capsys.readouterr()


@pytest.mark.parametrize("cmd", ["catalog", "count", "quotient", "type",
                                 "events", "bounds", "ratio", "verify",
                                 "augment"])
def test_help_screens(cmd, capsys):
    assert run([cmd, "--help"]) == 0
    out, _ = lines_of(capsys)
    assert out[0].startswith("usage: saw")
