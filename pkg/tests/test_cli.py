import json

import pytest

from dunkl_hermite import cli
from dunkl_hermite.errors import InternalConsistencyError
from dunkl_hermite.hermite import tabulated_form
from dunkl_hermite.multipoly import CPoly
from dunkl_hermite.reflection import build_group

BASE = ["--family", "Z2^d", "--d", "2", "--kappa", "1/2,1/3"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_exit_zero_and_files(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", *BASE, "--max-n", "1", "--max-s", "4", "--out", str(tmp_path),
                       "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["total"] == 22 and report["summary"]["fail"] == 0
    assert (tmp_path / "report.json").read_text() == out
    assert "exact-pass" in (tmp_path / "report.txt").read_text()


def test_verify_is_deterministic(capsys):
    args = ["verify", *BASE, "--n", "0,2", "--max-s", "3", "--format", "json"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args, "--jobs", "2")
    assert first == second


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--kappa", "0,0")[0] == 2
    assert run(capsys, "table", "--family", "I2", "--kappa", "1")[0] == 2
    assert run(capsys, "table", "--family", "Q")[0] == 2
    assert run(capsys, "quad-selftest", "--quad-order", "99")[0] == 2
    code, _, err = run(capsys, "verify", "--config", "/nonexistent.json")
    assert code == 2 and "config" in err
    with pytest.raises(SystemExit):
        cli.main(["verify", "--format", "xml"])


def test_internal_error_exit_code(capsys, monkeypatch):
    def boom(settings):
        raise InternalConsistencyError("broken invariant", witness="w0")
    monkeypatch.setitem(cli.COMMANDS, "table", boom)
    code, _, err = run(capsys, "table")
    assert code == 3 and "witness: w0" in err


def test_config_precedence(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"kappa": "2,3", "max-s": 5, "seed": 4}))
    ns = cli.build_parser().parse_args(["table", "--config", str(path), "--max-s", "2"])
    s = cli.resolve_settings(ns)
    assert s["kappa"] == "2,3" and s["max_s"] == 2 and s["seed"] == 4 and s["d"] == 2
    path.write_text(json.dumps({"colour": 1}))
    with pytest.raises(Exception):
        cli.resolve_settings(cli.build_parser().parse_args(["table", "--config", str(path)]))


def test_table_round_trip(capsys):
    code, out, _ = run(capsys, "table", *BASE, "--n", "1", "--max-s", "4", "--format", "json")
    assert code == 0
    table = json.loads(out)
    assert table["mu"] == "11/3"
    rd = build_group("Z2^d", 2, ["1/2", "1/3"])
    entry = table["entries"][0]
    pn = CPoly.from_json(entry["P_n"])
    for row in entry["rows"]:
        assert CPoly.from_json(row["poly"]) == tabulated_form(row["s"], rd.mu, 1, pn)
    assert entry["rows"][2]["radial"] == ["34/3", "0", "4"]
    assert entry["rows"][0]["gamma"] is not None


def test_table_text_and_empty_range(capsys):
    code, out, _ = run(capsys, "table", *BASE, "--n", "0", "--max-s", "2")
    assert code == 0 and "gamma" in out
    code, out, _ = run(capsys, "table", *BASE, "--n", "0", "--min-s", "3", "--max-s", "2")
    assert code == 0 and "(empty table)" in out


def test_export_basis(capsys):
    code, out, _ = run(capsys, "export-basis", "--family", "A", "--d", "3", "--kappa", "1",
                       "--max-n", "2", "--format", "json")
    assert code == 0
    bases = json.loads(out)["bases"]
    assert [b["rank"] for b in bases] == [1, 2, 3]
    assert all(b["kernel_dim"] == 8 * b["rank"] for b in bases)


def test_export_basis_rank_mismatch(capsys, monkeypatch):
    import dunkl_hermite.monogenic as mono
    monkeypatch.setattr(mono, "expected_rank", lambda n, d: 99)
    assert run(capsys, "export-basis", *BASE, "--n", "1")[0] == 1


def test_quad_selftest(capsys):
    code, out, _ = run(capsys, "quad-selftest", "--kappa", "0,1/2,7/3", "--format", "json")
    assert code == 0
    recs = json.loads(out)["records"]
    assert len(recs) == 18 and all(r["status"] == "pass" for r in recs)
