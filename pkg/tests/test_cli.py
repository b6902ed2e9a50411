import io
import json

import pytest

from skewhds import cli


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text


def test_verify_rt_m5():
    code, rep, _ = run("ds", "verify", "--family", "rt", "--m", "5", "--param", "1")
    assert code == 0
    assert rep["schema"] == 1
    assert rep["field"] == {"p": 3, "m": 5, "modulus": [1, 0, 0, 0, 2, 1]}
    assert rep["result"]["skew_hadamard"]
    assert rep["result"]["expected"] == [243, 121, 60]
    assert "timing" not in rep


def test_zero_param_is_usage_error(capsys):
    code, rep, _ = run("ds", "verify", "--family", "rt", "--m", "5", "--param", "0")
    assert code == 2 and rep is None
    assert "nonzero" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    code, _, _ = run("ds", "verify", "--frobnicate")
    assert code == 2
    assert "usage" in capsys.readouterr().err
    assert run("nosuch")[0] == 2
    assert run("ds", "verify", "--family", "rt", "--m", "4")[0] == 2


def test_negative_param_means_negation():
    _, a, _ = run("ds", "build", "--family", "dy", "--m", "3", "--param", "-1")
    assert a["result"]["param"] == 2  # -1 in GF(27) has code 2


def test_verification_failure_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": {"p": 3, "m": 3, "modulus": [1, 0, 2, 1]}, "family": None, "param": None,
                               "members": list(range(13))}))
    code, rep, _ = run("ds", "verify", "--input", str(bad))
    assert code == 1
    assert not rep["result"]["skew_hadamard"]
    assert "witness" in rep["result"]


def test_build_then_verify_roundtrip(tmp_path):
    path = tmp_path / "rt.json"
    code, rep, _ = run("ds", "build", "--family", "rt", "--m", "3", "--param", "1", "--out", str(path))
    assert code == 0
    saved = json.loads(path.read_text())
    assert saved["members"] == sorted(saved["members"]) and len(saved["members"]) == 13
    assert run("ds", "verify", "--input", str(path))[0] == 0
    assert run("ds", "chars", "--input", str(path))[0] == 0


def test_reports_are_byte_identical_across_threads():
    _, a, text_a = run("ds", "triples", "--family", "dy", "--m", "5", "--threads", "1")
    _, b, _ = run("ds", "triples", "--family", "dy", "--m", "5", "--threads", "4")
    _, _, text_c = run("ds", "triples", "--family", "dy", "--m", "5", "--threads", "1")
    assert text_a == text_c
    # only the echoed command differs
    a.pop("command"), b.pop("command")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_triples_csv_and_plot(tmp_path):
    csv_path, png = tmp_path / "h.csv", tmp_path / "h.png"
    code, rep, _ = run("ds", "triples", "--family", "rt", "--m", "5", "--param", "-1",
                       "--csv", str(csv_path), "--plot", str(png))
    assert code == 0
    assert (rep["result"]["min"], rep["result"]["max"]) == (24, 35)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "value,count" and lines[1] == "24,90"
    values = [int(l.split(",")[0]) for l in lines[1:]]
    assert values == sorted(values)
    assert png.stat().st_size > 0


def test_equiv_commands():
    code, rep, _ = run("ds", "equiv", "--full", "--m", "3", "--family1", "rt", "--family2", "paley")
    assert code == 0 and "matrix" in rep["result"]["witness"]
    code, rep, _ = run("ds", "equiv", "--semilinear", "--m", "5", "--family1", "rt", "--family2", "dy")
    assert code == 0 and rep["result"]["witness"] == "not-found"
    assert run("ds", "equiv", "--full", "--m", "5", "--family1", "rt", "--family2", "dy")[0] == 2


def test_field_info_with_modulus():
    code, rep, _ = run("field", "info", "--p", "3", "--m", "3", "--modulus", "1,2,0,1")
    assert code == 0 and rep["field"]["modulus"] == [1, 2, 0, 1]
    assert run("field", "info", "--p", "3", "--m", "3", "--modulus", "0,1,0,1")[0] == 2


def test_spread_and_digits():
    code, rep, _ = run("spread", "build", "--m", "3", "--verify")
    assert code == 0
    assert {k: rep["result"][k] for k in ("lines", "points", "disjoint", "cover", "isotropic", "ball_criterion")} == {
        "lines": 730, "points": 20440, "disjoint": True, "cover": True, "isotropic": True, "ball_criterion": True}
    code, rep, _ = run("digits", "verify", "--m", "7")
    assert code == 0 and rep["result"]["theorem61"]["ok"] and rep["result"]["lemma_chain"]


def test_twin_commands():
    code, rep, _ = run("twin", "build", "--q", "7", "--variant", "pds", "--verify")
    assert code == 0 and rep["result"]["verification"]["lambda"] == 15
    code, rep, _ = run("twin", "build", "--q", "5", "--variant", "skew", "--verify")
    assert code == 0 and rep["result"]["k"] == 17
    assert run("twin", "build", "--q", "241", "--variant", "skew", "--skew-family", "rt", "--verify")[0] == 2
    assert run("twin", "build", "--q", "13")[0] == 2


def test_timing_flag_adds_field():
    _, rep, _ = run("field", "info", "--p", "3", "--m", "1", "--timing")
    assert "timing" in rep


@pytest.mark.parametrize("target", ["table-m5", "equiv-m3", "characters", "spread", "twin"])
def test_repro_targets(target, tmp_path):
    code, rep, _ = run("repro", target, "--out-dir", str(tmp_path))
    assert code == 0
    assert rep["result"][target]["ok"]
    assert (tmp_path / f"report_{target}.json").exists()


def test_repro_table_m5_writes_figures(tmp_path):
    run("repro", "table-m5", "--out-dir", str(tmp_path))
    for name in ("table_m5.csv", "triples_m5.png", "minmax_m5.png", "triples_m5_RT_1.csv"):
        assert (tmp_path / name).stat().st_size > 0
    rows = (tmp_path / "table_m5.csv").read_text().splitlines()
    assert rows[0] == "set,min,max,expected_min,expected_max,match"
    assert rows[1] == "P,26,33,26,33,True"
