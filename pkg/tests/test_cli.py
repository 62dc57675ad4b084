import json
import subprocess
import sys

import jsonschema
import pytest

from gentlequiver import fixture, serialize
from gentlequiver.cli import main, schema


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema())
    return code, doc


COMMANDS = [
    ("validate", "fixture:ex6_6"),
    ("classify", "fixture:ex6_6"),
    ("phi", "fixture:ex7_8_A", "--orbits"),
    ("hh", "fixture:ex7_8_A", "--max-degree", "4"),
    ("cartan", "fixture:ex7_8_A", "--snf"),
    ("mutate", "fixture:ex7_8_A", "--vertex", "u1"),
    ("reduce", "fixture:ex7_8_A", "--m", "1"),
    ("equivalent", "fixture:ex3_2_I1", "fixture:ex3_2_I2", "--m", "3"),
    ("normal-form", "--m", "1", "--r", "2", "--s", "8"),
    ("fixture", "ex7_8_A"),
    ("fixture", "--list"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_json_matches_schema_and_is_deterministic(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0
    assert doc["command"] == argv[0]
    _, again = run_json(capsys, *argv)
    assert again == doc


def test_equivalent_example(capsys):
    code, doc = run_json(capsys, "equivalent", "fixture:ex3_2_I1", "fixture:ex3_2_I2", "--m", "3")
    assert code == 0 and doc["result"]["equivalent"]
    ev = doc["evidence"]
    assert ev["invariant_pairs"] == [[2, 14], [2, 14]]
    assert ev["phi_equal"] and ev["hh_equal"]


def test_inequivalent_exit_code(capsys, tmp_path):
    a, b = tmp_path / "a.quiver", tmp_path / "b.quiver"
    main(["normal-form", "--m", "1", "--r", "2", "--s", "8"])
    a.write_text(capsys.readouterr().out)
    main(["normal-form", "--m", "1", "--r", "2", "--s", "9"])
    b.write_text(capsys.readouterr().out)
    code, out, _ = run(capsys, "equivalent", str(a), str(b), "--m", "1")
    assert code == 1 and out.startswith("inequivalent")


def test_disconnected_is_an_error(capsys):
    code, _, err = run(capsys, "equivalent", "fixture:ex6_4_left", "fixture:ex6_4_right",
                       "--m", "2")
    assert code == 2 and "disconnected" in err and "components" in err


def test_phi_of_normal_form(capsys, tmp_path):
    main(["normal-form", "--m", "1", "--r", "2", "--s", "8"])
    path = tmp_path / "n.quiver"
    path.write_text(capsys.readouterr().out)
    code, out, _ = run(capsys, "phi", str(path))
    assert out.strip() == "2·(0,3) + 1·(7,3)"


def test_hh_example(capsys):
    code, doc = run_json(capsys, "hh", "fixture:ex7_8_A", "--max-degree", "10", "--char", "0")
    assert doc["result"]["dims"][6:] == [1, 1, 0, 0, 0]


def test_negative_verdicts(capsys, tmp_path):
    path = tmp_path / "bad.quiver"
    path.write_text("vertex x\nvertex 1\nvertex 2\nvertex 3\n"
                    "arrow a: x -> 1\narrow b: x -> 2\narrow c: x -> 3\n")
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1 and "G1" in out
    code, _, _ = run(capsys, "classify", str(path))
    assert code == 1


def test_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "phi", str(tmp_path / "missing.quiver"))[0] == 2
    bad = tmp_path / "bad.quiver"
    bad.write_text("vertex 1\narrow a: 1 -> 2\n")
    code, _, err = run(capsys, "phi", str(bad))
    assert code == 2 and "bad.quiver:2" in err
    assert run(capsys, "mutate", "fixture:ex3_2_I1", "--vertex", "h1")[0] == 2
    assert run(capsys, "normal-form", "--m", "1", "--r", "3", "--s", "2")[0] == 2
    assert run(capsys, "hh", "fixture:ex7_8_A", "--max-degree", "2", "--char", "4")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["fixture", "nope"])
    assert e.value.code == 2


def test_reduce_writes_replayable_log(capsys, tmp_path):
    log = tmp_path / "log.json"
    code, out, _ = run(capsys, "reduce", "fixture:ex3_2_I2", "--m", "3", "--log", str(log))
    assert code == 0
    from gentlequiver.mutation import MutationLog
    replayed = MutationLog.from_json(json.loads(log.read_text()), fixture("ex3_2_I2"))
    assert replayed.verify()


def test_mutate_cotilt(capsys):
    code, doc = run_json(capsys, "mutate", "fixture:ex7_8_A", "--vertex", "w1", "--co")
    assert code == 0 and doc["result"]["step"]["kind"] == "cotilt"


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize(fixture("ex7_8_Aprime"))))
    code, out, _ = run(capsys, "phi", "-")
    assert out.strip() == "1·(0,5) + 1·(6,1)"


def test_console_script_respects_no_color(tmp_path):
    env = {"NO_COLOR": "1", "PATH": "/usr/bin:/bin:/usr/local/bin"}
    proc = subprocess.run([sys.executable, "-m", "gentlequiver.cli", "validate", "fixture:ex6_6"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and proc.stdout == "gentle\n"
