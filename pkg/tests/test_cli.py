import json
from pathlib import Path

from quiverext.cli import main

GOLDEN = Path(__file__).resolve().parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fix(fixtures_dir, name):
    return str(fixtures_dir / (name + ".alg"))


def test_analyze_e24(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "analyze", fix(fixtures_dir, "e24"))
    assert code == 0
    report = json.loads(out)
    assert report["dim_lambda"] == 4
    assert report["basis"] == ["e_u", "e_v", "a", "b"]
    assert report["global_dimension"]["kind"] == "infinite"


def test_compare_pos_passes(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "compare", fix(fixtures_dir, "pos"),
                           "--window", "8", "--bound", "20")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "PASS"
    assert [r["n"] for r in report["window"]] == list(range(3, 11))


def test_compare_e41_exits_two(capsys, fixtures_dir):
    code, out, err = run_cli(capsys, "compare", fix(fixtures_dir, "e41"),
                             "--bound", "10")
    assert code == 2
    assert "hypotheses unmet" in err
    assert "a = infinite" in err
    report = json.loads(out)
    assert report["verdict"] == "HYPOTHESES_UNMET"


def test_missing_file_is_input_error(capsys):
    code, _, err = run_cli(capsys, "analyze", "no_such_file.alg")
    assert code == 1
    assert "error" in err


def test_bad_file_is_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices v\ntruncate 1\n")
    code, _, err = run_cli(capsys, "analyze", str(bad))
    assert code == 1
    assert "truncation" in err


def test_reports_are_deterministic(capsys, fixtures_dir):
    args = ("compare", fix(fixtures_dir, "pos"), "--bound", "16",
            "--window", "6", "--seed", "11")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_ext_table_csv(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "ext-table", fix(fixtures_dir, "a2"),
                           "--bound", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,source,target,g,dim"
    assert "1,u,v,1,1" in lines


def test_ext_table_products(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "ext-table", fix(fixtures_dir, "pos"),
                           "--bound", "6", "--products-bound", "4")
    assert code == 0
    report = json.loads(out)
    assert report["products"]
    degrees = {tuple(p["product"][:1]) for p in report["products"]}
    assert degrees


def test_corner_round_trip_through_cli(capsys, fixtures_dir, tmp_path):
    code, out, _ = run_cli(capsys, "corner", fix(fixtures_dir, "e41"))
    assert code == 0
    report = json.loads(out)
    assert report["dim_corner"] == 4
    assert [a["arrow"] for a in report["arrows"]] == ["a_ca", "a_cba"]
    exported = tmp_path / "corner.alg"
    exported.write_text(report["presentation"])
    code2, out2, _ = run_cli(capsys, "analyze", str(exported))
    assert code2 == 0
    assert json.loads(out2)["dim_lambda"] == 4


def test_resolve_matches_golden(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "resolve", fix(fixtures_dir, "e24"),
                           "--bound", "3", "--simple", "u")
    assert code == 0
    expected = (GOLDEN / "e24_resolve_u.json").read_text()
    assert out == expected


def test_text_format(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "analyze", fix(fixtures_dir, "a2"),
                           "--format", "text")
    assert code == 0
    assert "dim_lambda: 3" in out


def test_field_override(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "analyze", fix(fixtures_dir, "pos"),
                           "--field", "F7")
    assert code == 0
    assert json.loads(out)["field"] == "F7"


def test_out_flag(capsys, fixtures_dir, tmp_path):
    dest = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "analyze", fix(fixtures_dir, "a2"),
                           "--out", str(dest))
    assert code == 0
    assert out == ""
    assert json.loads(dest.read_text())["dim_lambda"] == 3


def test_corner_f_override(capsys, fixtures_dir):
    code, out, _ = run_cli(capsys, "corner", fix(fixtures_dir, "e24"),
                           "--f", "u,v")
    assert code == 0
    assert json.loads(out)["dim_corner"] == 4


def test_csv_only_for_ext_table(capsys, fixtures_dir):
    code, _, err = run_cli(capsys, "analyze", fix(fixtures_dir, "a2"),
                           "--format", "csv")
    assert code == 1
    assert "csv" in err
