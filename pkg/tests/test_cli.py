import json

import pytest

from dfinite.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture()
def apery_file(tmp_path):
    path = tmp_path / "apery.json"
    path.write_text(json.dumps({
        "variable": "z",
        "operator": [
            [-5, 1],
            [1, -112, 7],
            [0, 3, -153, 6],
            [0, 0, 1, -34, 1],
        ],
        "initial_terms": ["1", "5", "73"],
        "assertions": {"globally_bounded": True},
    }))
    return str(path)


@pytest.fixture()
def sqrt_file(tmp_path):
    path = tmp_path / "sqrt.json"
    path.write_text(json.dumps({
        "variable": "z",
        "operator": [[4], [0, -4], [1, -6, 8]],
        "initial_terms": ["1", "-1"],
        "assertions": {"globally_bounded": True},
    }))
    return str(path)


def test_cli_test_apery(capsys, apery_file):
    code, out = _run(capsys, ["test", apery_file])
    assert code == 0
    assert out["verdict"] == "T"
    assert out["confidence"] == "certified-modulo-minimality"
    assert any("NonsplittingIndicial(0" in s for s in out["certificate_display"])


def test_cli_test_gb(capsys, apery_file, sqrt_file):
    code, out = _run(capsys, ["test-gb", apery_file])
    assert code == 0 and out["verdict"] == "T"
    code, out = _run(capsys, ["test-gb", sqrt_file])
    assert code == 0 and out["verdict"] == "A"
    assert out["confidence"] == "conjectural-christol-andre"


def test_cli_minimize(capsys, apery_file):
    code, out = _run(capsys, ["minimize", apery_file])
    assert code == 0
    assert out["status"] == "input-returned"
    assert out["order"] == 3


def test_cli_indicial(capsys, apery_file):
    code, out = _run(capsys, ["indicial", apery_file, "--point", "0"])
    assert code == 0
    branch = out["branches"][0]
    assert branch["degree"] == 3
    assert branch["rational_roots"] == [["0", 3]]
    code, out = _run(capsys, ["indicial", apery_file, "--point", "poly:1,-34,1"])
    assert code == 0
    assert sorted(r for r, _ in out["branches"][0]["rational_roots"]) == ["0", "1", "1/2"]


def test_cli_formal_solutions(capsys, sqrt_file):
    code, out = _run(capsys, [
        "formal-solutions", sqrt_file, "--point", "1/4", "--order", "3", "--logs"])
    assert code == 0
    assert out["has_logarithms"] is False
    assert sorted(s["exponent"] for s in out["solutions"]) == ["0", "1/2"]


def test_cli_pcurv(capsys, sqrt_file):
    code, out = _run(capsys, ["pcurv", sqrt_file, "--primes", "3,5,7"])
    assert code == 0
    for rep in out["reports"]:
        assert rep["bad_prime"] or rep["is_zero"]


def test_cli_hypergeom(capsys):
    code, out = _run(capsys, ["hypergeom", "--a", "1/2,1/2", "--b", "1"])
    assert code == 0
    assert out["verdict"] == "transcendental-by-interlacing"
    code, out = _run(capsys, ["hypergeom", "--a", "1/2"])
    assert code == 0
    assert out["verdict"] == "algebraic-by-interlacing"
    code, out = _run(capsys, ["hypergeom", "--a", "1,1", "--b", "2"])
    assert code == 0
    assert out["verdict"] == "inapplicable"


def test_cli_guess_alg(capsys, sqrt_file):
    code, out = _run(capsys, ["guess-alg", sqrt_file])
    assert code == 0
    assert out["certified"] is True
    assert len(out["polynomial"]) == 3  # degree 2 in y


def test_cli_grade_bound(capsys, apery_file):
    code, out = _run(capsys, ["grade-bound", apery_file])
    assert code == 0
    assert out["grade_bound"] == 4


def test_cli_gen_walk(capsys):
    code, out = _run(capsys, ["gen", "walk", "--steps", "trident", "-n", "7"])
    assert code == 0
    assert out["coefficients"] == ["1", "2", "7", "23", "84", "301", "1127"]


def test_cli_gen_apery(capsys):
    code, out = _run(capsys, ["gen", "apery", "--powers", "2,2", "-n", "4"])
    assert code == 0
    assert out["coefficients"] == ["1", "5", "73", "1445"]


def test_cli_gen_series(capsys, apery_file):
    code, out = _run(capsys, ["gen", "series", "--file", apery_file, "-n", "5"])
    assert code == 0
    assert out["coefficients"][-1] == "33001"


def test_cli_gen_diagonal_spec(capsys, tmp_path):
    spec = tmp_path / "diag.json"
    spec.write_text(json.dumps({
        "vars": ["x", "y"],
        "num": [[1, [0, 0]]],
        "den": [[1, [0, 0]], [-1, [1, 0]], [-1, [0, 1]]],
    }))
    code, out = _run(capsys, ["gen", "diagonal", "--spec", str(spec), "-n", "5"])
    assert code == 0
    assert out["coefficients"] == ["1", "2", "6", "20", "70"]


def test_cli_verify_roundtrip(capsys, apery_file, tmp_path):
    code, _ = _run(capsys, ["test", apery_file])
    assert code == 0
    # rerun to capture the report text
    main(["test", apery_file])
    report_text = capsys.readouterr().out
    report_path = tmp_path / "report.json"
    report_path.write_text(report_text)
    code, out = _run(capsys, ["verify", apery_file, str(report_path)])
    assert code == 0
    assert out["verified"] is True
    assert out["verdict"] == "T"


def test_cli_verify_rejects_tampered(capsys, apery_file, sqrt_file, tmp_path):
    main(["test", apery_file])
    report = json.loads(capsys.readouterr().out)
    report["certificate"][1]["point"] = {"kind": "rational", "value": "3"}
    report_path = tmp_path / "bad.json"
    report_path.write_text(json.dumps(report))
    code, out = _run(capsys, ["verify", apery_file, str(report_path)])
    assert code == 2
    assert out["verified"] is False


def test_cli_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = _run(capsys, ["test", str(bad)])
    assert code == 2
    assert out["error"] == "input"


def test_cli_zero_operator_rejected(capsys, tmp_path):
    bad = tmp_path / "zero.json"
    bad.write_text(json.dumps({"operator": [[0]], "initial_terms": ["1"]}))
    code, out = _run(capsys, ["test", str(bad)])
    assert code == 2


def test_cli_deterministic_output(capsys, apery_file):
    main(["test", apery_file])
    first = json.loads(capsys.readouterr().out)
    main(["test", apery_file])
    second = json.loads(capsys.readouterr().out)
    first.pop("timings")
    second.pop("timings")
    assert first == second
