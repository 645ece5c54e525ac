import json

import pytest

from catfrac import fileio
from catfrac.cli import run

from conftest import POSITIVE


@pytest.fixture()
def ch3_file(tmp_path):
    path = tmp_path / "ch3"
    assert run(["instance", "CH3", "-o", str(path)]) == 0
    return str(path)


def test_instance_then_localise_pipeline(ch3_file, tmp_path, capsys):
    out = tmp_path / "out"
    assert run(["localise", ch3_file, "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["classes"]) == 7
    assert doc["name"] == "Fr(CH3)"
    assert set(doc["localisation"]) == {
        "m_0_1", "m_0_2", "m_1_2", "i_0", "i_1", "i_2"
    }


def test_localise_round_trip_byte_identity(ch3_file, tmp_path):
    out = tmp_path / "out"
    run(["localise", ch3_file, "-o", str(out)])
    text = out.read_text()
    assert fileio.dumps(fileio.load(str(out))) == text


def test_localise_output_is_itself_a_valid_structure(ch3_file, tmp_path):
    from catfrac.core import validate_category
    from catfrac.instances import from_instance

    out = tmp_path / "out"
    run(["localise", ch3_file, "-o", str(out)])
    dd = from_instance(fileio.load(str(out)))
    assert validate_category(dd.base) == []
    assert dd.certificate().ok


@pytest.mark.parametrize("name", POSITIVE + ("IDEM",))
def test_shipped_files_round_trip(name, tmp_path):
    path = tmp_path / name
    assert run(["instance", name, "-o", str(path)]) == 0
    text = path.read_text()
    assert fileio.dumps(fileio.load(str(path))) == text


def test_equal_both_methods(ch3_file, capsys):
    status = run(
        [
            "equal", ch3_file,
            "--left", "i_1,m_1_2,i_2",
            "--right", "m_0_1,m_0_2,i_2",
            "--method", "both",
        ]
    )
    out = capsys.readouterr().out
    assert status == 0
    assert out.strip().splitlines()[-1] == "equal"


def test_equal_not_equal_is_still_success(tmp_path, capsys):
    par = tmp_path / "par"
    run(["instance", "PAR", "-o", str(par)])
    status = run(
        [
            "equal", str(par),
            "--left", "i_X,f,i_Y",
            "--right", "i_X,g,i_Y",
            "--method", "both",
        ]
    )
    out = capsys.readouterr().out
    assert status == 0
    assert out.strip().splitlines()[-1] == "not equal"


def test_equal_witness_flag(ch3_file, capsys):
    status = run(
        [
            "equal", ch3_file,
            "--left", "i_1,m_1_2,i_2",
            "--right", "m_0_1,m_0_2,i_2",
            "--method", "3x3",
            "--witness",
        ]
    )
    out = capsys.readouterr().out
    assert status == 0
    assert "witness rows" in out


def test_axioms_failure_output(tmp_path, capsys):
    idem = tmp_path / "idem"
    run(["instance", "IDEM", "-o", str(idem)])
    status = run(["axioms", str(idem)])
    out = capsys.readouterr().out
    assert status == 1
    assert "(WU) FAIL witness i=e f=e" in out


def test_axioms_pass_output(ch3_file, capsys):
    assert run(["axioms", ch3_file]) == 0
    out = capsys.readouterr().out
    assert "(WU) PASS" in out and "(Fac) PASS" in out


def test_validate_command(ch3_file, capsys):
    assert run(["validate", ch3_file]) == 0
    assert "valid" in capsys.readouterr().out


def test_validate_rejects_broken_file(tmp_path, capsys):
    doc = {
        "name": "broken",
        "objects": ["X"],
        "morphisms": [{"id": "1", "src": "X", "tgt": "X"}],
        "identities": {"X": "1"},
        "composition": [],
        "denominators": ["1"],
        "s_denominators": ["1"],
        "t_denominators": ["1"],
    }
    path = tmp_path / "broken"
    path.write_text(json.dumps(doc))
    assert run(["validate", str(path)]) == 1
    assert "missing-composite" in capsys.readouterr().out


def test_compose_command(ch3_file, capsys):
    assert run(
        [
            "compose", ch3_file,
            "--left", "i_0,m_0_1,i_1",
            "--right", "i_1,m_1_2,i_2",
        ]
    ) == 0
    out = capsys.readouterr().out
    assert "i_0,m_0_2,i_2" in out


def test_compose_lax_mode_agrees(ch3_file, capsys):
    run(["compose", ch3_file, "--left", "i_0,m_0_1,i_1",
         "--right", "i_1,m_1_2,i_2", "--mode", "strict"])
    strict_out = capsys.readouterr().out
    run(["compose", ch3_file, "--left", "i_0,m_0_1,i_1",
         "--right", "i_1,m_1_2,i_2", "--mode", "lax"])
    lax_out = capsys.readouterr().out
    assert strict_out.split(":")[0] == lax_out.split(":")[0]


def test_normalise_command(ch3_file, capsys):
    assert run(["normalise", ch3_file, "--arrow", "m_0_1,m_0_2,i_2"]) == 0
    out = capsys.readouterr().out.strip()
    assert len(out.split(",")) == 3


def test_check_all_suites(ch3_file, capsys):
    assert run(["check", ch3_file, "--suite", "all"]) == 0
    out = capsys.readouterr().out
    assert "theorem PASS" in out
    assert "coproducts-preserved PASS" in out
    assert "products-preserved PASS" in out


def test_check_axioms_failure_exit(tmp_path):
    idem = tmp_path / "idem"
    run(["instance", "IDEM", "-o", str(idem)])
    assert run(["check", str(idem), "--suite", "axioms"]) == 1


def test_dot_export(ch3_file, tmp_path):
    out, dot = tmp_path / "out", tmp_path / "g.dot"
    assert run(["localise", ch3_file, "-o", str(out), "--dot", str(dot)]) == 0
    text = dot.read_text()
    assert text.startswith('digraph "Fr(CH3)"')
    assert text.count("->") == 7


def test_unknown_ids_exit_one(ch3_file, capsys):
    status = run(["equal", ch3_file, "--left", "zz,zz,zz", "--right", "zz,zz,zz"])
    assert status == 1
    assert "zz" in capsys.readouterr().err


def test_missing_file_exit_one(capsys):
    assert run(["axioms", "/nonexistent/file"]) == 1


def test_usage_error_exit_two(capsys):
    assert run(["equal"]) == 2
    assert run(["no-such-command"]) == 2


def test_localise_refuses_bad_structure(tmp_path, capsys):
    idem = tmp_path / "idem"
    run(["instance", "IDEM", "-o", str(idem)])
    assert run(["localise", str(idem), "-o", str(tmp_path / "out")]) == 1
    assert "(WU)" in capsys.readouterr().err
