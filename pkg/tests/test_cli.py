"""CLI contract: files, exit codes, reproducibility, seeds."""

import json
import os

import pytest

from bilrank import fileio
from bilrank.cli import main


def run(args):
    return main(args)


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


@pytest.fixture
def trace_fixture(tmp_path):
    path = str(tmp_path / "trace.json")
    assert run(["construct", "--name", "trace-symmetric", "--q", "3", "--ext", "2",
                "--n", "3", "--out", path]) == 0
    return path


def test_construct_writes_verified_fixture(trace_fixture):
    obj = read_json(trace_fixture)
    assert obj["format"] == "bilrank-subspace"
    assert obj["kind"] == "symmetric"
    assert obj["declared"]["maximal"] is True
    assert obj["self_verification"]["verdict"] == "holds"


@pytest.mark.parametrize(
    "args",
    [
        ["--name", "alt-full", "--q", "2", "--n", "3"],
        ["--name", "alt-pencil", "--q", "5", "--n", "4"],
        ["--name", "block-symmetric", "--q", "3", "--n", "4", "--r", "2"],
        ["--name", "alt-odd", "--q", "2", "--k", "3"],
        ["--name", "column-family", "--q", "3", "--ext", "2", "--m", "3", "--r", "1"],
    ],
)
def test_construct_catalogue_and_verify_clean(tmp_path, args):
    path = str(tmp_path / "m.sub")
    assert run(["construct", *args, "--out", path]) == 0
    assert run(["verify", path]) == 0


def test_construct_alt_full_q2_has_three_basis_forms(tmp_path):
    path = str(tmp_path / "alt.json")
    assert run(["construct", "--name", "alt-full", "--q", "2", "--n", "3", "--out", path]) == 0
    assert len(read_json(path)["basis"]) == 3


def test_construct_bad_parameters_exit_2(tmp_path):
    path = str(tmp_path / "x.json")
    assert run(["construct", "--name", "block-symmetric", "--q", "3", "--n", "4",
                "--r", "3", "--out", path]) == 2
    assert not os.path.exists(path)


def test_construct_column_family_example(tmp_path):
    path = str(tmp_path / "cf.json")
    assert run(["construct", "--name", "column-family", "--q", "3", "--ext", "2",
                "--m", "3", "--r", "1", "--out", path]) == 0
    obj = read_json(path)
    assert obj["n"] == 6 and len(obj["basis"]) == 6


def test_analyze_reports_expected_statistics(tmp_path, capsys):
    path = str(tmp_path / "alt33.json")
    run(["construct", "--name", "alt-full", "--q", "3", "--n", "3", "--out", path])
    out_path = str(tmp_path / "analysis.json")
    assert run(["analyze", path, "--json", "--out", out_path]) == 0
    obj = read_json(out_path)
    assert obj["dim"] == 3
    assert obj["spectrum"] == [2]
    assert obj["distinct_left_radicals"] == 13
    assert obj["isotropic_nonzero"] == 26


def test_analyze_zero_subspace_note(tmp_path):
    from bilrank.gf import field_for_order
    from bilrank.spanspace import span

    path = str(tmp_path / "zero.json")
    fileio.write_subspace(path, span([], field=field_for_order(3), n=2))
    out_path = str(tmp_path / "an.json")
    assert run(["analyze", path, "--json", "--out", out_path]) == 0
    obj = read_json(out_path)
    assert obj["spectrum"] == [] and "rank(M)=0" in obj["note"]


def test_analyze_dependent_rows_named(tmp_path, capsys):
    path = str(tmp_path / "bad.json")
    obj = {
        "format": "bilrank-subspace",
        "version": 1,
        "field": {"p": 3, "k": 1, "modulus": [0, 1]},
        "n": 2,
        "basis": [
            {"n": 2, "rows": [[1, 0], [0, 1]]},
            {"n": 2, "rows": [[2, 0], [0, 2]]},
        ],
    }
    with open(path, "w") as fh:
        fh.write(fileio.dumps(obj))
    assert run(["analyze", path]) == 2
    err = capsys.readouterr().err
    assert "basis row 1 is dependent" in err


def test_analyze_malformed_json_diagnostic(tmp_path, capsys):
    path = str(tmp_path / "broken.json")
    with open(path, "w") as fh:
        fh.write('{"format": "bilrank-subspace",\n  "n": }')
    assert run(["analyze", path]) == 2
    assert "line 2" in capsys.readouterr().err


def test_verify_suite_selection_single_report(trace_fixture, tmp_path):
    out = str(tmp_path / "rep.json")
    assert run(["verify", trace_fixture, "--suite", "counting", "--json", "--out", out]) == 0
    obj = read_json(out)
    assert len(obj["reports"]) == 1
    assert obj["reports"][0]["theorem_id"] == "counting-identity"


def test_verify_corrupted_fixture_exit_1_with_witness(trace_fixture, tmp_path):
    obj = read_json(trace_fixture)
    obj["basis"][1] = {"n": 3, "rows": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]}
    bad = str(tmp_path / "bad.json")
    with open(bad, "w") as fh:
        fh.write(fileio.dumps(obj))
    rep_path = str(tmp_path / "rep.json")
    assert run(["verify", bad, "--json", "--out", rep_path]) == 1
    reports = read_json(rep_path)["reports"]
    viol = [r for r in reports if r["verdict"] == "violated"]
    assert viol and viol[0]["witness"]["kind"] == "spectrum-mismatch"


def test_verify_budget_exit_2(trace_fixture):
    assert run(["verify", trace_fixture, "--budget", "5"]) == 2


def test_budget_env_var(trace_fixture, monkeypatch):
    monkeypatch.setenv("BILRANK_BUDGET", "5")
    assert run(["verify", trace_fixture]) == 2
    monkeypatch.delenv("BILRANK_BUDGET")
    assert run(["verify", trace_fixture]) == 0


def test_reports_byte_stable(trace_fixture, tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    run(["verify", trace_fixture, "--json", "--out", a])
    run(["verify", trace_fixture, "--json", "--out", b])
    assert open(a).read() == open(b).read()


def test_roundtrip_is_canonical(trace_fixture, tmp_path):
    loaded = fileio.read_subspace(trace_fixture)
    rewritten = str(tmp_path / "again.json")
    fileio.write_subspace(rewritten, loaded.subspace, loaded.declared, loaded.self_verification)
    assert open(rewritten).read() == open(trace_fixture).read()


# --- search ------------------------------------------------------------------


def test_search_requires_seed(capsys):
    assert run(["search", "rank2-distinct-radicals", "--q", "3", "--n", "3",
                "--trials", "10"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_search_zero_trials_empty_log(tmp_path):
    log = str(tmp_path / "log.json")
    assert run(["search", "rank2-distinct-radicals", "--q", "3", "--n", "3",
                "--seed", "1", "--trials", "0", "--log", log]) == 0
    obj = read_json(log)
    assert obj["trials_run"] == 0 and obj["found"] is False


def test_search_finds_rank2_distinct_radical_fixture(tmp_path):
    fix = str(tmp_path / "found.json")
    log = str(tmp_path / "log.json")
    assert run(["search", "rank2-distinct-radicals", "--q", "3", "--n", "3",
                "--seed", "11", "--trials", "400", "--out", fix, "--log", log]) == 0
    obj = read_json(log)
    assert obj["found"] is True
    assert run(["verify", fix]) == 0
    loaded = fileio.read_subspace(fix)
    assert loaded.declared["distinct_radicals"] == 4


def test_search_maximal_confirms_trace_fixture(trace_fixture, tmp_path):
    log = str(tmp_path / "log.json")
    assert run(["search", "maximal", "--file", trace_fixture, "--log", log]) == 0
    obj = read_json(log)
    assert obj["verdict"] == "holds" and obj["details"]["mode"] == "exhaustive"


def test_search_alt_spectrum_trivial_case(tmp_path):
    # n = 3, s = 1: the target is Alt(V) itself, found immediately
    fix = str(tmp_path / "alt.json")
    log = str(tmp_path / "log.json")
    assert run(["search", "alt-spectrum", "--q", "3", "--n", "3", "--s", "1",
                "--seed", "2", "--trials", "5", "--out", fix, "--log", log]) == 0
    assert read_json(log)["found"] is True
    assert run(["verify", fix]) == 0


# --- campaign ------------------------------------------------------------------


def test_campaign_grid_paths_and_determinism(tmp_path):
    out1, out2 = str(tmp_path / "c1"), str(tmp_path / "c2")
    args = ["campaign", "--q", "2,3", "--n", "2,3", "--kind", "alternating,symmetric",
            "--trials", "5", "--seed", "9"]
    assert run(args + ["--out", out1]) == 0
    assert run(args + ["--out", out2]) == 0
    names = sorted(os.listdir(out1))
    assert names == sorted(os.listdir(out2))
    assert "q2-n3-alternating.json" in names and "summary.json" in names
    for name in names:
        assert open(os.path.join(out1, name)).read() == open(os.path.join(out2, name)).read()
    summary = read_json(os.path.join(out1, "summary.json"))
    assert summary["violated_total"] == 0


def test_campaign_rejects_unknown_kind(tmp_path):
    assert run(["campaign", "--q", "3", "--n", "3", "--kind", "weird",
                "--trials", "1", "--seed", "1", "--out", str(tmp_path / "c")]) == 2


def test_campaign_construction_mode(tmp_path):
    out = str(tmp_path / "cc")
    assert run(["campaign", "--q", "2,3", "--n", "3", "--construction", "alt-pencil",
                "--trials", "1", "--seed", "3", "--out", out]) == 0
    names = sorted(os.listdir(out))
    assert "q2-n3-alt-pencil.sub" in names and "q2-n3-alt-pencil.json" in names
    point = read_json(os.path.join(out, "q3-n3-alt-pencil.json"))
    assert point["violations"] == []
    assert run(["verify", os.path.join(out, "q3-n3-alt-pencil.sub")]) == 0
