import json

import pytest

from conftest import INTERVAL10_JSON, X3_JSON
from main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, cli_dispatch

K1 = {"breakpoints": [{"r": "0", "x": "a", "label": 0}, {"r": "1", "x": "b"}]}
K2 = {"breakpoints": [{"r": "0", "x": "a", "label": 0}, {"r": "1", "x": "b", "label": 0}, {"r": "2", "x": "c"}]}
K3 = {"breakpoints": [{"r": "0", "x": "a", "label": 1}, {"r": "1", "x": "b"}]}
K5 = {"breakpoints": [{"r": "0", "x": "a", "label": 0}, {"r": "1", "x": "b", "label": 1}, {"r": "2", "x": "c"}]}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(obj))
        return str(p)
    return write


def _out(capsys):
    return json.loads(capsys.readouterr().out)


def test_space_check(files, capsys):
    assert cli_dispatch(["space", "check", files("x3", X3_JSON)]) == EXIT_OK
    out = _out(capsys)
    assert out["diameter"] == "2"
    assert out["space"] == X3_JSON


def test_space_check_reports_interval_length(files, capsys):
    assert cli_dispatch(["space", "check", files("i10", INTERVAL10_JSON)]) == EXIT_OK
    assert _out(capsys)["space"] == INTERVAL10_JSON


def test_space_check_accepts_envelope(files, capsys):
    assert cli_dispatch(["space", "diameter", files("x3", {"space": X3_JSON})]) == EXIT_OK
    assert _out(capsys) == {"diameter": "2"}


def test_invalid_space_exits_1(files, capsys):
    bad = dict(X3_JSON, metric=[["0", "3", "1"], ["3", "0", "1"], ["1", "1", "0"]])
    assert cli_dispatch(["space", "check", files("bad", bad)]) == EXIT_FAILURE
    assert "Metric axiom violated" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    assert cli_dispatch(["elem"]) == EXIT_USAGE
    assert cli_dispatch(["nonsense"]) == EXIT_USAGE
    assert cli_dispatch(["--help"]) == EXIT_OK


def test_missing_file_exits_1(tmp_path, capsys):
    assert cli_dispatch(["space", "check", str(tmp_path / "missing.json")]) == EXIT_FAILURE


def test_elem_verbs(files, capsys):
    space = files("x3", X3_JSON)
    assert cli_dispatch(["elem", "dist", "--space", space, "--a", files("k5", K5), "--b", files("k3", K3),
                         "--s", "2"]) == EXIT_OK
    assert _out(capsys) == {"d": "3", "d_trunc": "2"}
    assert cli_dispatch(["elem", "meet", "--space", space, "--elements", files("k1", K1), files("k2", K2)]) == EXIT_OK
    assert _out(capsys) == {"same_component": True, "meet": K1}
    assert cli_dispatch(["elem", "restrict", "--space", space, "--element", files("k2", K2), "--r", "1"]) == EXIT_OK
    assert _out(capsys) == K1
    assert cli_dispatch(["elem", "tp", "--space", space, "--element", files("k2", K2)]) == EXIT_OK
    assert _out(capsys) == {"x": "c"}


def test_interval_and_tree_verbs(files, capsys):
    space = files("x3", X3_JSON)
    a, b, x = files("k3", K3), files("k2", K2), files("k5", K5)
    assert cli_dispatch(["interval", "delta", "--space", space, "--a", a, "--b", b, "--x", x, "--r", "3"]) == EXIT_OK
    assert _out(capsys) == {"delta": "2", "distance": "1"}
    assert cli_dispatch(["interval", "project", "--space", space, "--a", a, "--b", b, "--x", x]) == EXIT_OK
    assert _out(capsys)["projection"] == K1
    assert cli_dispatch(["tree", "ccl", "--space", space, "--elements", a, b]) == EXIT_OK
    assert len(_out(capsys)["elements"]) == 4


def test_path_axioms_verb(files, capsys):
    tripod = {"points": ["a", "b", "c", "o"],
              "metric": [["0", "2", "2", "1"], ["2", "0", "2", "1"], ["2", "2", "0", "1"], ["1", "1", "1", "0"]]}
    assert cli_dispatch(["path", "axioms", "--metric", files("tripod", tripod), "--r", "5"]) == EXIT_OK
    assert _out(capsys) == {"holds": False}


def test_prop_run(files, capsys):
    space = files("x3", X3_JSON)
    code = cli_dispatch(["prop", "run", "--suite", "metric-axioms", "--space", space, "--seed", "9",
                         "--cases", "3", "--max-breakpoints", "3"])
    assert code == EXIT_OK
    report = _out(capsys)
    assert report["suite"] == "metric-axioms"
    assert report["violations"] == []


def test_prop_run_unknown_suite(files, capsys):
    assert cli_dispatch(["prop", "run", "--suite", "nope", "--space", files("x3", X3_JSON)]) == EXIT_FAILURE
    assert "Unknown suite" in capsys.readouterr().err


def test_prop_run_bad_numbers_are_usage_errors(files, capsys):
    space = files("x3", X3_JSON)
    assert cli_dispatch(["prop", "run", "--suite", "metric-axioms", "--space", space, "--seed", "-1"]) == EXIT_USAGE
    assert "must be >= 0" in capsys.readouterr().err
    assert cli_dispatch(["prop", "run", "--suite", "metric-axioms", "--space", space, "--cases", "0"]) == EXIT_USAGE
    assert cli_dispatch(["prop", "run", "--suite", "metric-axioms", "--space", space,
                         "--max-denominator", "x"]) == EXIT_USAGE


def test_elem_pred(files, capsys):
    space = files("x3", X3_JSON)
    fn = {"kind": "point_values", "values": ["0", "1", "2"], "lipschitz": "1"}
    assert cli_dispatch(["elem", "pred", "--space", space, "--element", files("k2", K2),
                         "--function", files("f", fn)]) == EXIT_OK
    assert _out(capsys) == {"value": "2"}
    steep = dict(fn, values=["0", "0", "2"])
    assert cli_dispatch(["elem", "pred", "--space", space, "--element", files("k2", K2),
                         "--function", files("steep", steep)]) == EXIT_FAILURE
    assert "Lipschitz" in capsys.readouterr().err


def test_tree_iso(files, capsys):
    space = files("x3", X3_JSON)
    pt_a = files("pt_a", {"breakpoints": [{"r": "0", "x": "a"}]})
    args = ["tree", "iso", "--space", space, "--a", files("k3", K3), "--b", pt_a, "--d", pt_a]
    assert cli_dispatch(args + ["--c", files("k1", K1)]) == EXIT_OK
    assert _out(capsys) == {"isomorphic": True}
    assert cli_dispatch(args + ["--c", files("k2", K2)]) == EXIT_OK
    assert _out(capsys) == {"isomorphic": False}
