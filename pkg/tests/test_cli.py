import json
import subprocess
import sys

import pytest

from rcring.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_edgelist(capsys):
    code, out, _ = run(capsys, "gen", "--n", "3", "--d", "1", "--r", "3", "--format", "edgelist")
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "rcr n=3 d=1 r=3" and len(lines) - 1 == 36


def test_gen_family_alias(capsys):
    _, a, _ = run(capsys, "gen", "--family", "ccc", "--n", "4")
    _, b, _ = run(capsys, "gen", "--n", "4", "--d", "1", "--r", "4")
    assert a == b


def test_gen_is_deterministic(capsys, tmp_path):
    out = tmp_path / "g.dot"
    assert main(["gen", "--n", "3", "--d", "2", "--r", "3", "--format", "dot", "--out", str(out)]) == 0
    first = out.read_bytes()
    main(["gen", "--n", "3", "--d", "2", "--r", "3", "--format", "dot", "--out", str(out)])
    assert out.read_bytes() == first


def test_gen_rejects_non_divisible(capsys):
    code, _, err = run(capsys, "gen", "--n", "3", "--d", "1", "--r", "4")
    assert code == EXIT_USAGE
    assert "multiple of n" in err and "--general" in err
    code, out, _ = run(capsys, "gen", "--n", "3", "--d", "1", "--r", "4", "--general")
    assert code == EXIT_OK and out.startswith("rcr-general n=3 d=1 r=4")


def test_route(capsys):
    code, out, _ = run(capsys, "route", "--n", "3", "--d", "1", "--r", "3", "--src", "000@0", "--dst", "111@0", "--verify")
    d = json.loads(out)
    assert code == EXIT_OK and d["length"] == 6 == d["bfs_length"]
    assert d["path"][0] == "000@0" and d["path"][-1] == "111@0"


def test_route_to_self(capsys):
    code, out, _ = run(capsys, "route", "--n", "3", "--d", "1", "--r", "3", "--src", "010@2", "--dst", "010@2")
    d = json.loads(out)
    assert code == EXIT_OK and d["length"] == 0 and d["path"] == ["010@2"]


def test_route_verify_reports_mismatch(capsys, monkeypatch):
    import rcring.oracle as oracle

    real = oracle.bfs_distances

    def off_by_one(g, src=0):
        field = real(g, src)
        return oracle.DistanceField(field.source, field.dist + 1)

    monkeypatch.setattr(oracle, "bfs_distances", off_by_one)
    code, _, _ = run(capsys, "route", "--n", "3", "--d", "1", "--r", "3", "--src", "000@0", "--dst", "111@0", "--verify")
    assert code == EXIT_VERIFY


def test_route_bad_vertex(capsys):
    code, _, _ = run(capsys, "route", "--n", "3", "--d", "1", "--r", "3", "--src", "00@0", "--dst", "111@0")
    assert code == EXIT_USAGE


def test_diam(capsys):
    code, out, _ = run(capsys, "diam", "--family", "ccc", "--n", "4", "--oracle")
    d = json.loads(out)
    assert code == EXIT_OK and d["diameter"] == 8 == d["diameter_oracle"]


def test_metrics_report(capsys, tmp_path):
    code, out, _ = run(capsys, "metrics", "--n", "3", "--d", "1", "--r", "3", "--oracle", "full", "--out", str(tmp_path))
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["diameter"]["value"] == 6 and d["pi"]["value"] == 72
    assert (d["bw"]["lo"], d["bw"]["hi"]) == (4, 4)
    assert d["diameter_oracle"]["value"] == 6 and d["orbit_proportional"]["value"] is True
    assert "verification_failures" not in d
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["rcr_3_1_3.json", "rcr_3_1_3_distances.png", "rcr_3_1_3_loads.png"]


def test_metrics_without_oracle_has_no_oracle_fields(capsys):
    _, out, _ = run(capsys, "metrics", "--n", "4", "--d", "2", "--r", "4")
    d = json.loads(out)
    assert "td_oracle" not in d and d["flags"]["regime"] == "dr>=2n"


def test_metrics_text_format(capsys):
    code, out, _ = run(capsys, "metrics", "--n", "3", "--d", "1", "--r", "3", "--format", "text")
    assert code == EXIT_OK and "diameter" in out and not out.lstrip().startswith("{")


def test_bisect(capsys):
    code, out, _ = run(capsys, "bisect", "--n", "3", "--d", "1", "--r", "3", "--oracle")
    d = json.loads(out)
    assert code == EXIT_OK and d["lo"] == d["hi"] == d["bw_oracle"] == 4
    assert len(d["witness"]) == 12


def test_bisect_oracle_budget(capsys):
    code, _, err = run(capsys, "bisect", "--n", "4", "--d", "1", "--r", "4", "--oracle")
    assert code == EXIT_BUDGET and "exceeds budget" in err


def test_budget_flag(capsys):
    code, _, _ = run(capsys, "gen", "--n", "6", "--d", "2", "--r", "3", "--budget", "10")
    assert code == EXIT_BUDGET


def test_census_general(capsys):
    code, out, _ = run(capsys, "census", "--general", "--n", "3", "--d", "1", "--r", "4")
    d = json.loads(out)
    assert code == EXIT_OK
    assert [row["base"] for row in d["rows"]] == ["000@3", "000@1"]
    assert d["differing_t"]
    assert all(sum(row["counts"]) == 32 for row in d["rows"])


def test_census_text_marks_differences(capsys):
    _, out, _ = run(capsys, "census", "--general", "--n", "3", "--d", "1", "--r", "4", "--format", "text")
    assert "*" in out and "first differing t" in out


def test_census_cayley(capsys):
    _, out, _ = run(capsys, "census", "--n", "3", "--d", "1", "--r", "3")
    d = json.loads(out)
    assert d["rows"][0]["counts"] == d["rows"][1]["counts"] and d["differing_t"] == []
    assert sum(d["rows"][0]["counts"]) == 24


def test_verify_small(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--only", "3,1,3", "--only", "4,2,4", "--only", "3,1,4", "--out", str(tmp_path))
    d = json.loads(out)
    assert code == EXIT_OK and d["instances"] == d["passed"] == 3
    assert (tmp_path / "sweep.csv").read_text().startswith("family,n,d,r")
    assert (tmp_path / "td_bounds.png").exists()


def test_verify_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "--only", "3,3,3")
    d = json.loads(out)
    assert code == EXIT_VERIFY
    assert d["failed_checks"] == {"td bounds": 1}
    assert d["first_failures"]["td bounds"].startswith("Q_3(3,3)")


@pytest.mark.parametrize(
    "argv",
    [
        ["frob"],
        ["gen", "--n", "3", "--d", "1"],
        ["gen", "--n", "x", "--d", "1", "--r", "3"],
        ["verify", "--only", "3,1"],
        ["route", "--general", "--n", "3", "--d", "1", "--r", "4", "--src", "000@0", "--dst", "000@1"],
    ],
)
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_console_script_exit_code():
    res = subprocess.run(
        [sys.executable, "-m", "rcring.cli", "gen", "--n", "3", "--d", "1", "--r", "4"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == EXIT_USAGE
