import json

import pytest

from unitals.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_field_command(capsys):
    code, rep = run_json(capsys, "field", "--q", "3")
    assert code == 0
    assert rep["field"] == {"p": 3, "h": 2, "order": 9, "modulus": [1, 0, 1]}
    assert len(rep["exp"]) == 8 and len(rep["log"]) == 9


def test_field_with_explicit_modulus(capsys):
    code, rep = run_json(capsys, "field", "--p", "3", "--h", "2", "--modulus", "2,2,1")
    assert code == 0
    assert rep["field"]["modulus"] == [2, 2, 1]


def test_build_unital_behs(capsys):
    code, rep = run_json(capsys, "build-unital", "--kind", "behs", "--q", "3")
    assert code == 0
    assert rep["cardinality"] == 28
    assert len(rep["points"]) == 28
    assert rep["points"] == sorted(rep["points"])
    assert len(rep["conics"]) == 3


def test_verify_unital_json_and_csv(capsys):
    code, rep = run_json(capsys, "verify-unital", "--kind", "hermitian", "--q", "3")
    assert code == 0
    assert rep["is_unital"] and rep["profile"] == {"1": 28, "4": 63}
    code, out = run_cli(capsys, "verify-unital", "--kind", "hermitian", "--q", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["size,count", "1,28", "4,63"]


def test_verify_unital_from_points_file(tmp_path, capsys):
    bad = tmp_path / "points.json"
    bad.write_text(json.dumps(list(range(28))))
    code, rep = run_json(capsys, "verify-unital", "--q", "3", "--points", str(bad))
    assert code == 1
    assert not rep["is_unital"] and rep["failures"]


def test_enum_conics(capsys):
    code, rep = run_json(capsys, "enum-conics", "--kind", "behs", "--q", "3")
    assert code == 0
    assert rep["count"] == 3
    code, rep = run_json(capsys, "enum-conics", "--kind", "hermitian", "--q", "3", "--method", "exhaustive")
    assert code == 0
    assert rep["count"] == 0


def test_classify_pair(capsys):
    code, rep = run_json(capsys, "classify-pair", "--q", "3", "--case", "3", "--k", "4")
    assert code == 0
    assert rep["ptype"] == "hyperosculating"
    assert rep["common_points"] == [[0, 1, 0]]
    assert rep["rank1_member"] == [0, 0, 1, 0, 0, 0]
    code, rep = run_json(
        capsys, "classify-pair", "--q", "3", "--conic", "0,0,1,2,0,0", "--conic2", "0,0,1,1,0,0"
    )
    assert code == 0
    assert rep["ptype"] == "bitangent_real"


def test_cone_residual_case3(capsys):
    code, rep = run_json(capsys, "cone-residual", "--case", "3", "--q", "3", "--k", "4")
    assert code == 0
    assert rep["ok"]
    assert rep["pairs"][0]["residual"] == []


def test_cone_residual_case1_report(capsys):
    code, rep = run_json(capsys, "cone-residual", "--case", "1", "--q", "3")
    assert code == 0
    assert rep["ok"] and rep["exceptional_lines_miss_surface"]
    for pair in rep["pairs"]:
        assert pair["matches_closed_form"]
        for entry in pair["residual"]:
            assert entry["rank"] == 3


def test_check_lemma1(capsys):
    code, rep = run_json(capsys, "check", "--claim", "lemma1", "--q", "5")
    assert code == 0
    assert rep["max_size"] == 3 and rep["bound"] == 3 and rep["ok"]


def test_check_lemma2_csv(capsys):
    code, out = run_cli(capsys, "check", "--claim", "lemma2", "--q", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "witness" and len(lines) == 3


def test_check_theorem3(capsys):
    code, rep = run_json(capsys, "check", "--claim", "theorem3", "--q", "3", "--samples", "20", "--seed", "1")
    assert code == 0
    assert rep["ok"] and rep["conics_checked"] == 23


def test_check_nucleus(capsys):
    code, rep = run_json(capsys, "check", "--claim", "nucleus")
    assert code == 0
    assert rep["ok"] and rep["ovals_checked"] > 0


def test_check_main_q3(capsys):
    code, rep = run_json(capsys, "check", "--claim", "main", "--q", "3")
    assert code == 0
    assert rep["ok"]
    assert rep["behs"]["matches_construction"] and rep["behs"]["exhaustive_cross_check"]
    assert rep["behs"]["certificate"]["signature"] == "BEHS"
    assert rep["hermitian"]["conics_contained"] == 0


def test_check_afkl_refused_below_bound(capsys):
    code, _ = run_cli(capsys, "check", "--claim", "afkl", "--q", "3")
    assert code == 2


def test_usage_errors(capsys):
    code, _ = run_cli(capsys, "field", "--q", "6")  # not a prime power
    assert code == 2
    code, _ = run_cli(capsys, "classify-pair", "--q", "3")  # no pair given
    assert code == 2
    code, _ = run_cli(capsys, "build-unital", "--q", "3", "--format", "csv")  # no csv table here
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_report_all_text_and_exit(capsys):
    code, out = run_cli(capsys, "report-all", "--q", "3", "--seed", "7", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("PASS") and "unital" in line for line in lines)
    assert any(line.startswith("SKIP") and "afkl" in line for line in lines)


def test_report_all_deterministic(capsys):
    code1, out1 = run_cli(capsys, "report-all", "--q", "3", "--seed", "7")
    code2, out2 = run_cli(capsys, "report-all", "--q", "3", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
