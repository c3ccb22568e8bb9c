import json
import subprocess
import sys

import pytest

from twistext.cli import main, run


def test_weyl_schur_json():
    code, out = run(["ext-weyl-schur", "--mu", "2", "--lambda", "2", "--p", "2", "--i", "1",
                     "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["poincare"] == [[0, 1], [2, 1], [4, 1]]
    assert list(data) == ["query", "p", "i", "j", "k", "mu", "lambda", "poincare", "shift",
                          "label", "provenance"]
    assert data["shift"] == {"value": 0}
    assert data["provenance"]


def test_divided_text():
    code, out = run(["ext-divided", "--lambda", "1", "--functor", "I", "--p", "3", "--i", "1"])
    assert code == 0
    assert out.splitlines()[0] == "1 + t^2 + t^4"
    assert "provenance:" in out


def test_partition_fk():
    code, out = run(["partition-fk", "--lambda", "1", "--p", "2", "--k", "0", "--i", "1",
                     "--format", "json"])
    data = json.loads(out)
    assert code == 0 and data["weight"] == 2
    cert = data["certificate"][0]
    assert cert["core"] == [] and cert["quotient"][0] == [1]


def test_runner_offset_env(monkeypatch):
    monkeypatch.setenv("TWISTEXT_RUNNER_OFFSET", "1")
    code, out = run(["partition-fk", "--lambda", "1", "--p", "2", "--k", "0"])
    assert code == 0 and out.splitlines()[0] == "2"
    monkeypatch.setenv("TWISTEXT_RUNNER_OFFSET", "7")
    code, out = run(["partition-fk", "--lambda", "1", "--p", "2", "--k", "0"])
    assert code == 2 and "TWISTEXT_RUNNER_OFFSET" in out


def test_symbolic_shift_rendering_and_override():
    argv = ["ext-weyl-fk", "--mu", "2", "--lambda", "2", "--p", "2", "--i", "1", "--j", "1",
            "--k", "0"]
    code, out = run(argv)
    assert out.splitlines()[0] == "t^{h(1,0)} * (1 + t^4 + t^8)"
    code, out = run(argv + ["--shift", "2"])
    assert out.splitlines()[0] == "t^2 + t^6 + t^10"
    code, out = run(argv + ["--format", "json"])
    assert json.loads(out)["shift"] == {"symbolic": [1, 0]}


def test_fk_label():
    code, out = run(["ext-fk", "--lambda", "2,1", "--p", "3", "--i", "1", "--k", "2"])
    assert code == 0
    assert "label: Specht(2,1)" in out


def test_latex():
    code, out = run(["ext-weyl-schur", "--mu", "1", "--lambda", "1", "--p", "2", "--i", "1",
                     "--format", "latex"])
    assert out == "1 + t^{2}"


@pytest.mark.parametrize("argv,flag", [
    (["ext-weyl-schur", "--lambda", "2", "--p", "2", "--i", "1"], "--mu"),
    (["ext-weyl-schur", "--mu", "2", "--lambda", "2", "--p", "4", "--i", "1"], "--p"),
    (["ext-weyl-schur", "--mu", "2", "--lambda", "2,y", "--p", "2", "--i", "1"], "--lambda"),
    (["ext-fk", "--lambda", "1", "--p", "2", "--i", "1", "--k", "5"], "--k"),
    (["ext-weyl-schur", "--mu", "2", "--lambda", "2", "--p", "2", "--i", "x"], "--i"),
])
def test_usage_errors_name_the_flag(argv, flag):
    code, out = run(argv)
    assert code == 2
    assert flag in out


def test_unknown_command():
    code, out = run(["frobnicate"])
    assert code == 2 and "frobnicate" in out


def test_unsupported_functor_exit_3():
    code, out = run(["ext-divided", "--lambda", "2", "--functor", "Twist(I,1)", "--p", "2",
                     "--i", "1"])
    assert code == 3


def test_kan_normalize_text_and_json():
    expr = "Ext(Twist(Weyl[2,1],1), Twist(Schur[2,1],1))"
    code, out = run(["kan-normalize", "--expr", expr, "--p", "2"])
    assert code == 0
    assert out.startswith("normal form: Ext(Weyl[2,1], Param(Schur[2,1], A_1))")
    assert "[adjunction]" in out and "value: 1 + 2t^2 + 2t^4 + t^6" in out
    code, out = run(["kan-normalize", "--expr", expr, "--p", "2", "--format", "json"])
    data = json.loads(out)
    assert [s["rule"] for s in data["trace"]] == ["adjunction", "kan-of-twist"]
    assert data["answer"]["poincare"] == [[0, 1], [2, 2], [4, 2], [6, 1]]


def test_kan_normalize_unsupported_is_reported():
    code, out = run(["kan-normalize", "--expr", "Ext(Twist(Tensor(I,I),1), Schur[2,2])",
                     "--p", "2"])
    assert code == 0 and "not evaluated" in out


def test_char_table_aliases():
    code1, out1 = run(["char", "table", "4"])
    code2, out2 = run(["char-table", "--d", "4"])
    assert code1 == code2 == 0 and out1 == out2
    data = json.loads(run(["char-table", "3", "--format", "json"])[1])
    assert data["table"][1] == [-1, 0, 2]


def test_oracle_check():
    code, out = run(["oracle", "check"])
    assert code == 0 and "FAIL" not in out


ALL_JSON = [
    ["ext-weyl-schur", "--mu", "2,1", "--lambda", "1^3", "--p", "3", "--i", "2"],
    ["ext-divided", "--lambda", "1,1", "--functor", "S[2]", "--p", "2", "--i", "1"],
    ["ext-fk", "--lambda", "2,1", "--p", "2", "--i", "2", "--k", "1"],
    ["ext-weyl-fk", "--mu", "1", "--lambda", "1", "--p", "2", "--i", "1", "--j", "1", "--k", "0"],
    ["kan-normalize", "--expr", "Dual(K(Param(S[4],U),Twist(I,1)))", "--p", "2"],
    ["partition-core-quotient", "--lambda", "4,2,1", "--p", "3"],
    ["partition-fk", "--lambda", "2", "--p", "3", "--k", "1", "--i", "2"],
    ["char-table", "--d", "3"],
    ["oracle-check", "--d", "2"],
]


@pytest.mark.parametrize("argv", ALL_JSON, ids=lambda a: a[0])
def test_json_roundtrip_and_determinism(argv):
    code, out = run(argv + ["--format", "json"])
    assert code == 0
    assert json.dumps(json.loads(out), ensure_ascii=True) == out
    assert run(argv + ["--format", "json"]) == (code, out)
    assert "provenance" in json.loads(out)


@pytest.mark.parametrize("argv", ALL_JSON, ids=lambda a: a[0])
def test_text_and_latex_render(argv):
    for fmt in ("text", "latex"):
        code, out = run(argv + ["--format", fmt])
        assert code == 0 and out


def test_main_and_module_entry(capsys):
    assert main(["ext-weyl-schur", "--mu", "1", "--lambda", "1", "--p", "2", "--i", "1"]) == 0
    assert capsys.readouterr().out.startswith("1 + t^2")
    proc = subprocess.run([sys.executable, "-m", "twistext", "bogus"], capture_output=True,
                          text=True)
    assert proc.returncode == 2 and "bogus" in proc.stderr
