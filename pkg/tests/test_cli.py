import io
import json
import subprocess
import sys

import pytest

from tfrunner.cli import dispatch
from tfrunner.errors import InputError
from tfrunner.rational import RealBasis
from tfrunner.serialize import coeffs_from_json, parse_exact, points_from_json


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    return code, json.loads(out) if out else None


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return write


class TestParsing:
    def test_exact_expressions(self):
        b = RealBasis.from_labels(["sqrt2", "sqrt3"])
        assert parse_exact("1+sqrt2", b) == b.element(1, 1)
        assert parse_exact("-1/2*sqrt3 + 3", b) == b.element(3, 0, -0.5)
        assert parse_exact("2sqrt2", b) == b.element(0, 2)
        with pytest.raises(InputError):
            parse_exact("sqrt7", b)
        with pytest.raises(InputError):
            parse_exact("1++", b)

    def test_points_and_coeffs(self):
        p = points_from_json({"points": [{"tau": 0, "omega": 1}, [1, 2]]})
        assert [(q.tau, q.w) for q in p] == [(0, 1), (1, 2)]
        assert list(coeffs_from_json([1, [0, 1], {"re": 2, "im": -1}])) == [1, 1j, 2 - 1j]
        with pytest.raises(InputError):
            coeffs_from_json([])


class TestCommands:
    def test_affine_dim(self, validate):
        code, rep = run_json("affine-dim", "--omegas", "0,1,2,3")
        assert code == 0 and rep["affine_dimension"] == 1
        validate(rep, "affine_dim_report")

    def test_affine_dim_exact(self, files, validate):
        basis = files("b.json", {"labels": ["1", "sqrt2", "sqrt3"]})
        code, rep = run_json("affine-dim", "--omegas", "0,1,sqrt2,sqrt3", "--exact", basis)
        assert rep == {"affine_dimension": 3, "heuristic": False}

    def test_relations(self, files, validate):
        basis = files("b.json", ["1", "sqrt2"])
        code, rep = run_json("relations", "--lambdas", "1,sqrt2,1+sqrt2", "--exact", basis)
        assert rep["relations"] == [[1, 1, -1]]
        validate(rep, "relations_report")

    def test_approx(self, validate):
        code, rep = run_json("approx", "--lambdas", "1,2", "--targets", "0.3,0.6", "--eps", "0.05")
        assert code == 0 and rep["witness"]["achieved_error"] <= 0.05
        validate(rep, "approx_report")
        code, rep = run_json("approx", "--lambdas", "1,2", "--targets", "0.3,0.7", "--eps", "0.05")
        assert rep["verdict"]["kind"] == "Bad" and rep["witness"] is None
        validate(rep, "approx_report")

    def test_approx_budget(self):
        code, rep = run_json("approx", "--lambdas", "1,1.4142135623730951,1.7320508075688772", "--targets", "0.5,0.1,0.9", "--eps", "0.0001", "--budget", "100")
        assert code == 3

    def test_runner(self, tmp_path, validate):
        csv_path = tmp_path / "scan.csv"
        code, rep = run_json("runner", "--velocities", "1,2,3", "--starts", "0,0,0", "--target", "0.2499999", "--scan-csv", str(csv_path))
        assert code == 0 and rep["witness"]["t"] == pytest.approx(0.25, abs=1e-6)
        validate(rep, "runner_report")
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "t,margin" and len(lines) > 900

    def test_spectator(self, validate):
        code, rep = run_json("spectator", "--velocities", "1,2,3", "--starts", "0,0,0")
        assert rep["spectator"] != "one"
        validate(rep, "spectator_report")

    def test_gabor(self, files, validate, tmp_path):
        f = files("f.json", {"kind": "two_plus_cos"})
        lam = files("l.json", {"points": [{"tau": t, "omega": w} for t in (0, 0.3) for w in (0, -1, 1)]})
        code, rep = run_json("gabor", "score", "--function", f, "--lambda", lam, "--window", "16", "--samples", "16384")
        assert code == 2 and rep["dependent"]
        validate(rep, "gabor_score_report")
        out = tmp_path / "s.csv"
        code, rep = run_json("gabor", "samples", "--function", f, "--lambda", lam, "--samples", "64", "--csv", str(out))
        assert code == 0 and len(out.read_text().splitlines()) == 65
        code, text, _ = run("gabor", "samples", "--function", f, "--lambda", lam, "--samples", "8")
        assert text.splitlines()[0].startswith("t,re_0")

    def test_hrt(self, files, validate):
        f = files("f.json", {"kind": "one_sided_exp"})
        lam = files("l.json", {"points": [[0, 0], [0.5, 1], [0.9, 2], [1.3, 4]]})
        c = files("c.json", [1, [0, 1], -1, 2])
        code, rep = run_json("hrt", "verify", "--function", f, "--lambda", lam, "--coeffs", c)
        assert code == 0 and rep["verdict"] == "RefutedDependence"
        validate(rep, "witness_report")
        code, rep = run_json("hrt", "classify", "--lambda", lam)
        assert rep == {"tag": "Case1", "subcase": "Case1Generic"}
        validate(rep, "case_tag")

    def test_hrt_dependent_exit(self, files, validate):
        f = files("f.json", {"kind": "two_plus_cos"})
        lam = files("l.json", {"points": [[t, w] for t in (0, 0.3) for w in (0, -1, 1)]})
        code, rep = run_json("hrt", "verify", "--function", f, "--lambda", lam)
        assert code == 2 and rep["verdict"] == "NumericallyDependent"
        validate(rep, "witness_report")

    def test_hrt_exact(self, files):
        f = files("f.json", {"kind": "one_sided_exp"})
        basis = files("b.json", ["1", "sqrt2"])
        lam = files("l.json", {"points": [[0, "0"], [0.3, "1"], [0.7, "sqrt2"], [1.1, "1+sqrt2"]]})
        c = files("c.json", [1, [0, 1], -1, 2])
        code, rep = run_json("hrt", "verify", "--function", f, "--lambda", lam, "--coeffs", c, "--exact", basis)
        assert code == 0 and rep["details"]["branch"] == "perturbation"

    @pytest.mark.parametrize("a", ["0.3", "0.7071067811865476", "2.7"])
    def test_demo(self, a, validate):
        code, rep = run_json("demo", "counterexample", "--a", a)
        assert code == 0 and rep["reproduced"]
        assert rep["min_eigenvalue"] <= 1e-8 * rep["trace"]
        assert len(rep["null_vector"]) == 6
        validate(rep, "demo_counterexample_report")

    def test_demo_runners(self, validate):
        code, rep = run_json("demo", "runners", "--count", "5", "--seed", "3")
        assert rep["solved"] == 5
        validate(rep, "demo_runners_report")

    def test_csv_format(self):
        code, text, _ = run("affine-dim", "--omegas", "0,1,2,3", "--format", "csv")
        assert text.splitlines() == ["key,value", "affine_dimension,1", "heuristic,True"]


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["bogus"],
            ["affine-dim"],
            ["affine-dim", "--omegas", "0,x"],
            ["runner", "--velocities", "2,1", "--starts", "0,0"],
            ["approx", "--lambdas", "1", "--targets", "0.5", "--eps", "0.9"],
            ["hrt", "verify", "--function", "/nonexistent.json", "--lambda", "/nonexistent.json"],
            ["gabor", "score", "--function", "x", "--lambda", "y", "--samples", "1"],
        ],
    )
    def test_usage_exit(self, argv):
        code, out, err = run(*argv)
        assert code == 64 and out == "" and err

    def test_inconclusive_exit(self):
        code, rep = run_json("runner", "--velocities", "1,2,3", "--starts", "0,0,0", "--target", "0.3", "--budget", "1000")
        assert code == 3 and rep["witness"] is None


def test_deterministic_bytes(files):
    f = files("f.json", {"kind": "gaussian"})
    lam = files("l.json", {"points": [[0, 0], [0.5, 1], [0.9, 2 ** 0.5], [1.3, 3 ** 0.5]]})
    first = run("hrt", "verify", "--function", f, "--lambda", lam)
    second = run("hrt", "verify", "--function", f, "--lambda", lam)
    assert first == second and first[0] == 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tfrunner", "affine-dim", "--omegas", "0,1,2,3"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["affine_dimension"] == 1


@pytest.mark.parametrize(
    "name,obj",
    [
        ("point_set", {"points": [{"tau": 0.0, "omega": 1.0}, {"tau": 1.0, "omega": {"basis": ["1", "sqrt2"], "coeffs": [[1, 2], [3, 1]]}}]}),
        ("function_model", {"kind": "gaussian", "center": 0.0, "width": 1.0}),
        ("exact_real", {"basis": ["1"], "coeffs": [[1, 3]]}),
        ("basis", {"labels": ["1", "sqrt2"]}),
    ],
)
def test_input_schemas(validate, name, obj):
    validate(obj, name)
