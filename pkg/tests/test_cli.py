import pytest

from curvature_structures.cli.condition import Condition, parse_condition
from curvature_structures.errors import ConditionSyntaxError, ConditionValenceError, UnknownNameError
from curvature_structures.start import main
from curvature_structures.structures.report import parse_kv, parse_text
from curvature_structures.utils import db


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_compute_dump(capsys):
    code, out = run(capsys, "compute", "example1", "P", "kappa")
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("P[1,2,2,1] = ") for line in lines)
    assert lines[-1].startswith("kappa = ")


def test_compute_kv(capsys):
    code, out = run(capsys, "compute", "example1", "S", "--format", "kv")
    assert code == 0
    assert "S.2.2=1/2" in out.splitlines()


def test_compute_from_file(capsys, tmp_path):
    spec = tmp_path / "cylinder.metric"
    spec.write_text("dim = 3\ncoords = x y z\ng[1,1] = 1\ng[2,2] = x^2\ng[3,3] = 1\n")
    code, out = run(capsys, "compute", str(spec), "g")
    assert code == 0
    assert out.splitlines() == ["g[1,1] = 1", "g[2,2] = x^2", "g[3,3] = 1"]


@pytest.mark.parametrize(
    "spec, condition, expected",
    [
        ("example1", "P.R = 0", 0),
        ("example1", "P.calS = 0", 2),
        ("example2", "P.R = L*Q(S,R)", 0),
        ("flat", "R.R = L*Q(g,R)", 3),
        ("example1", "P.calS = = 0", 64),
        ("example1", "R.R = Q(g,S)", 65),
        ("example1", "X.R = 0", 66),
        ("no-such-example", "P.R = 0", 66),
    ],
)
def test_check_exit_codes(capsys, spec, condition, expected):
    code, _ = run(capsys, "check", spec, condition)
    assert code == expected


def test_check_kv(capsys):
    code, out = run(capsys, "check", "example2", "P.R = L*Q(S,R)", "--format", "kv")
    assert code == 0
    lines = out.splitlines()
    assert "check.id=P.R=L*Q(S,R)" in lines
    assert "check.status=HoldsSymbolic" in lines or "check.status=HoldsNumeric" in lines
    assert any(line.startswith("check.L=") for line in lines)


def test_check_numeric_only(capsys):
    code, out = run(capsys, "check", "example1", "P.S = 0", "--numeric-only")
    assert code == 0
    assert out.split(" | ")[1] == "HoldsNumeric"


def test_example_output(capsys):
    code, out = run(capsys, "example", "example4-verbatim")
    assert code == 0
    assert out.startswith("# note: ")
    assert "dim = 4" in out


def test_report_formats_agree(capsys):
    code, text = run(capsys, "report", "sphere")
    assert code == 0
    code, kv = run(capsys, "report", "sphere", "--format", "kv")
    assert code == 0
    assert parse_text(text) == parse_kv(kv)
    assert text.splitlines()[-1].startswith("summary ")
    assert "chart=sphere" in kv.splitlines()


def test_report_save(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(db, "artifacts_dir", str(tmp_path))
    code, out = run(capsys, "report", "flat", "--save", "flat")
    assert code == 0
    assert db.load_report("flat") == out


def test_parse_condition():
    condition = parse_condition("R.R = L*Q(g,R)")
    assert isinstance(condition, Condition)
    assert condition.check_id == "R.R=L*Q(g,R)"
    assert parse_condition("Q(S,P)=0").check_id == "Q(S,P)=0"
    assert parse_condition("P.S = R.S").left.valence == (0, 4)


@pytest.mark.parametrize(
    "text, error",
    [
        ("0 = 0", ConditionSyntaxError),
        ("Q(g,R) = L*Q(S,R)", ConditionSyntaxError),
        ("P.calS =", ConditionSyntaxError),
        ("P.calR = 0 extra", ConditionSyntaxError),
        ("Z.R = 0", UnknownNameError),
        ("Q(R,R) = 0", UnknownNameError),
        ("P.S = R.R", ConditionValenceError),
        ("P.calS = Q(g,S)", ConditionValenceError),
    ],
)
def test_condition_errors(text, error):
    with pytest.raises(error):
        parse_condition(text)
