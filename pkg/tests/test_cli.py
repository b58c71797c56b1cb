import json

import numpy as np
import pytest

from skewca.cli import main

COFFEE_CSV = """,HP,TC,SA,NE,BR
HP,93,17,44,7,10
TC,9,46,11,0,9
SA,17,11,155,9,12
NE,6,4,9,15,2
BR,10,4,12,2,27
"""


@pytest.fixture()
def coffee_csv(tmp_path):
    path = tmp_path / "coffee.csv"
    path.write_text(COFFEE_CSV, encoding="utf-8")
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_json(capsys, coffee_csv):
    code, out, err = run_cli(capsys, "analyze", str(coffee_csv), "--lambda", "pearson")
    assert code == 0, err
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["command"] == "analyze"
    assert report["config"]["lambda"] == 1.0
    assert all(not r["contains_origin"] for r in report["regions"])


def test_analyze_named_lambdas_match_numeric(capsys, coffee_csv):
    _, out_named, _ = run_cli(capsys, "analyze", str(coffee_csv), "--lambda", "cressie-read")
    _, out_num, _ = run_cli(
        capsys, "analyze", str(coffee_csv), "--lambda", str(2.0 / 3.0)
    )
    a = json.loads(out_named)
    b = json.loads(out_num)
    assert a["asymmetry"]["phi_total"] == b["asymmetry"]["phi_total"]


def test_analyze_deterministic_bytes(capsys, coffee_csv, tmp_path):
    args = [
        "analyze", str(coffee_csv), "--lambda", "kl",
        "--svg", str(tmp_path / "p.svg"), "-o", str(tmp_path / "r.json"),
    ]
    assert main(args) == 0
    first_json = (tmp_path / "r.json").read_bytes()
    first_svg = (tmp_path / "p.svg").read_bytes()
    assert main(args) == 0
    assert (tmp_path / "r.json").read_bytes() == first_json
    assert (tmp_path / "p.svg").read_bytes() == first_svg


def test_csv_output_with_json_companion(capsys, coffee_csv, tmp_path):
    out_path = tmp_path / "report.csv"
    code, _, err = run_cli(
        capsys, "analyze", str(coffee_csv), "--format", "csv", "-o", str(out_path)
    )
    assert code == 0, err
    assert out_path.read_text(encoding="utf-8").startswith("record,")
    companion = tmp_path / "report.json"
    assert companion.exists()
    report = json.loads(companion.read_text(encoding="utf-8"))
    assert report["command"] == "analyze"


def test_bowker_command(capsys, coffee_csv):
    code, out, _ = run_cli(capsys, "bowker", str(coffee_csv))
    assert code == 0
    report = json.loads(out)
    assert abs(report["bowker"]["statistic"] - 20.41235813366961) < 1e-9
    assert report["bowker"]["dof"] == 10


def test_scan_command(capsys, coffee_csv):
    code, out, _ = run_cli(capsys, "scan", str(coffee_csv), "--grid", "0.5:1.0:0.25")
    assert code == 0
    report = json.loads(out)
    assert report["scan"]["grid"] == [0.5, 0.75, 1.0]


def test_matched_command(capsys, tmp_path):
    t1 = tmp_path / "t1.csv"
    t2 = tmp_path / "t2.csv"
    t1.write_text(",1,2,3,4\n1,140,1,0,0\n2,30,3,1,0\n3,66,4,2,0\n4,83,15,10,1\n")
    t2.write_text(",1,2,3,4\n1,3,1,0,0\n2,3,1,1,0\n3,15,8,0,0\n4,23,8,7,0\n")
    code, out, err = run_cli(
        capsys, "matched", str(t1), str(t2), "--lambda", "pearson",
        "--svg", str(tmp_path / "gss.svg"),
    )
    assert code == 0, err
    report = json.loads(out)
    vals = report["matched"]["block_singular_values"]
    assert np.allclose(
        vals, [1.344, 1.344, 0.239, 0.239, 0.055, 0.055, 0.032, 0.032], atol=1e-3
    )
    assert report["config"]["metric"] == "identity"
    assert (tmp_path / "gss_sum.svg").exists()
    assert (tmp_path / "gss_difference.svg").exists()


def test_config_file_and_override(capsys, coffee_csv, tmp_path, monkeypatch):
    cfg = tmp_path / "skewca.cfg"
    cfg.write_text("lambda=hellinger\nalpha=0.10\n# comment\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "analyze", str(coffee_csv), "--config", str(cfg))
    assert code == 0
    report = json.loads(out)
    assert report["config"]["lambda"] == -0.5
    assert report["config"]["alpha"] == 0.10
    # flag overrides the file
    code, out, _ = run_cli(
        capsys, "analyze", str(coffee_csv), "--config", str(cfg), "--lambda", "kl"
    )
    report = json.loads(out)
    assert report["config"]["lambda"] == 0.0
    # env var names the default config
    monkeypatch.setenv("SKEWCA_CONFIG", str(cfg))
    code, out, _ = run_cli(capsys, "analyze", str(coffee_csv))
    assert json.loads(out)["config"]["lambda"] == -0.5


def test_bad_config_file(capsys, coffee_csv, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no equals sign here\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", str(coffee_csv), "--config", str(cfg))
    assert code == 2
    assert "key=value" in err


def test_exit_code_2_for_malformed_csv(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\na,1,2\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", str(bad))
    assert code == 2
    assert "error:" in err


def test_exit_code_2_for_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "analyze", str(tmp_path / "nope.csv"))
    assert code == 2


def test_exit_code_2_for_bad_lambda(capsys, coffee_csv):
    code, _, err = run_cli(capsys, "analyze", str(coffee_csv), "--lambda", "-2")
    assert code == 2
    assert "lam" in err


def test_exit_code_2_for_bad_dims(capsys, coffee_csv, tmp_path):
    code, _, err = run_cli(
        capsys, "analyze", str(coffee_csv), "--dims", "1,9",
        "--svg", str(tmp_path / "x.svg"),
    )
    assert code == 2
    assert "dimension" in err


def test_exit_code_3_for_diagonal_table(capsys, tmp_path):
    diag = tmp_path / "diag.csv"
    diag.write_text("a,b\na,5,0\nb,0,5\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", str(diag))
    assert code == 3
    assert "diagonal" in err


def test_exit_code_3_for_symmetric_scan(capsys, tmp_path):
    sym = tmp_path / "sym.csv"
    sym.write_text("a,b\na,1,2\nb,2,1\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "scan", str(sym), "--grid", "0.0:1.0:0.5")
    assert code == 3
    assert "symmetric" in err


def test_error_text_names_offending_cell(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\na,1,x\nb,3,4\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "analyze", str(bad))
    assert code == 2
    assert "'a'" in err and "'b'" in err and "x" in err


def test_axes_both_plots_column_points(capsys, coffee_csv, tmp_path):
    svg = tmp_path / "both.svg"
    code, _, _ = run_cli(
        capsys, "analyze", str(coffee_csv), "--axes", "both", "--svg", str(svg)
    )
    assert code == 0
    body = svg.read_text(encoding="utf-8")
    assert ">HP</text>" in body
    assert ">HP&apos;</text>" in body or ">HP'</text>" in body
