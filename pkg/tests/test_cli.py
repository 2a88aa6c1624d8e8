import json
import math
import subprocess

import numpy as np
import pytest

from fracorlicz.cli import main
from fracorlicz.experiments import Assertion, ExperimentError, Report, run_experiment, verify_embedding_norms
from fracorlicz.functions import SampledFunction, write_csv
from fracorlicz.young import power, spliced

SUPER = json.dumps(spliced(1.5, 0.0, 3.0, 0.0).to_dict())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("relation, expected, measured, ok", [
    ("rel", 1.0, 1.05, False), ("rel", 1.0, 1.01, True), ("abs", 0.0, 0.01, True),
    ("le", 1.0, 1.5, False), ("ge", 1.0, 1.5, True), ("eq", "a", "a", True), ("in", (0, 1), 0.5, True),
])
def test_assertion_relations(relation, expected, measured, ok):
    assert Assertion("x", expected, measured, 0.02, relation, "derived").passed is ok


def test_unknown_relation():
    with pytest.raises(ValueError):
        Assertion("x", 1, 1, 0, "near", "derived")


def test_report_json_is_stable_and_finite_safe(tmp_path):
    rep = Report("demo", {"n": 1}, fitted={"c": math.inf, "k": np.float64(2.0)},
                 tables={"t": (["a", "b"], [[1, 0.1], [2, math.nan]])})
    rep.check("ok", 1.0, 1.0, 0.0, "rel", "trivial")
    doc = json.loads(rep.to_json())
    assert doc["fitted"] == {"c": "inf", "k": 2.0}
    assert doc["passed"] is True
    paths = rep.write(tmp_path)
    assert [p.rsplit("/", 1)[-1] for p in paths] == ["demo.json", "demo-t.csv"]
    assert (tmp_path / "demo-t.csv").read_text().splitlines()[0] == "a,b"


def test_unknown_experiment():
    with pytest.raises(ExperimentError):
        run_experiment("nope", {})


def test_embedding_norms_small():
    rep = verify_embedding_norms({"gallery": ["pow1.5"], "bumps": ["tent"], "dilations": [1, 2],
                                  "amplitudes": [1.0, 2.0]})
    assert rep.assertions and rep.passed


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--young", SUPER)
    assert code == 0
    assert json.loads(out)["tag"] == "supercritical"


def test_conjugate_writes_files(capsys, tmp_path):
    code, out, _ = run(capsys, "conjugate", "--young", SUPER, "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "conjugate.json").exists() and (tmp_path / "conjugate-sampled.csv").exists()


def test_targets(capsys):
    assert run(capsys, "target-orlicz", "--young", SUPER)[0] == 0
    assert run(capsys, "target-ri", "--young", SUPER)[0] == 0


def test_inadmissible_target_exits_2(capsys):
    code, _, err = run(capsys, "target-orlicz", "--young", json.dumps(power(2.0).to_dict()))
    assert code == 2 and err.startswith("error:")


def test_luxemburg_and_seminorm(capsys, tmp_path):
    x = np.linspace(-1.5, 1.5, 601)
    path = tmp_path / "u.csv"
    write_csv(SampledFunction(x, np.clip(1 - np.abs(x), 0, None)), path)
    code, out, _ = run(capsys, "luxemburg", "--young", json.dumps(power(2.0).to_dict()), "--function", str(path))
    assert code == 0 and json.loads(out)["norm"] == pytest.approx(math.sqrt(2 / 3), rel=1e-2)
    code, out, _ = run(capsys, "seminorm", "--young", SUPER, "--function", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["seminorm"] > 0 and doc["method"] == "quadrature"


def test_hardy_check(capsys, tmp_path):
    code, out, _ = run(capsys, "hardy-check", "--young", SUPER, "--target", "linf")
    doc = json.loads(out)
    assert code == 0 and 0 < doc["estimate"] <= doc["upper_bound"]
    trials = tmp_path / "trials"
    trials.mkdir()
    write_csv(SampledFunction(np.linspace(0.05, 1.95, 20), np.ones(20), "halfline"), trials / "one.csv")
    code, out, _ = run(capsys, "hardy-check", "--young", SUPER, "--target", "intersection", "--trials", str(trials))
    assert code == 0 and json.loads(out)["trials_used"] == 1


def test_console_script_help(pkg_env):
    env, py = pkg_env
    out = subprocess.run([py, "-m", "fracorlicz.cli", "--help"], env=env, capture_output=True, text=True)
    assert out.returncode == 0 and "verify" in out.stdout
