import io
import json
from pathlib import Path

import jsonschema
import pytest

from prymr9.cli import main
from prymr9.lp import ExactLP, minimize

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_default_is_verify_and_passes():
    code, text = run()
    assert code == 0
    assert "overall: pass (32/32)" in text


def test_json_report_matches_schema():
    code, text = run("verify", "--json")
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["overall"] == "pass" and doc["count"] == len(doc["items"])
    assert all(isinstance(i["timing_ms"], float) for i in doc["items"])


def test_schema_rejects_decimal_status():
    doc = json.loads(run("verify", "--json", "--no-timing")[1])
    doc["items"][0]["status"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, SCHEMA)


def test_only_grr():
    code, text = run("verify", "--json", "--only", "grr", "--no-timing")
    doc = json.loads(text)
    assert code == 0
    assert {i["module"] for i in doc["items"]} == {"grr"}
    ids = {i["claim_id"] for i in doc["items"]}
    assert {"thm1.1.degeneracy", "thm2.3.D9"} <= ids


def test_only_single_claim():
    doc = json.loads(run("--json", "--only", "eq7.R.K")[1])
    assert [i["claim_id"] for i in doc["items"]] == ["eq7.R.K"]
    assert doc["items"][0]["computed_value"] == "-1"


def test_no_timing_is_deterministic():
    a = run("verify", "--json", "--no-timing")[1]
    b = run("verify", "--json", "--no-timing")[1]
    assert a == b and "timing_ms" not in a
    assert run("--no-timing")[1] == run("--no-timing")[1]


def test_parallel_matches_serial():
    serial = run("--json", "--no-timing")[1]
    assert run("--json", "--no-timing", "--parallel")[1] == serial


def test_perturbation_fails_with_exit_1():
    code, text = run("verify", "--json", "--no-timing", "--perturb", "R.lambda=10")
    doc = json.loads(text)
    assert code == 1 and doc["overall"] == "fail"
    failed = {i["claim_id"] for i in doc["items"] if i["status"] == "fail"}
    assert "eq7.R.K" in failed and "thm0.1.not_pseudoeffective" in failed


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--genus", "8"),
        ("verify", "--only", "nonsense"),
        ("verify", "--perturb", "R.mu=1"),
        ("verify", "--perturb", "lambda"),
        ("verify", "--perturb", "R.lambda=0.5"),
        ("class", "foo"),
        ("class", "d9", "--alpha", "1.5"),
        ("class", "d9", "--genus", "7"),
        ("bogus",),
    ],
)
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_class_outputs():
    assert "13" in run("class", "canonical")[1]
    code, text = run("class", "d9", "--alpha", "3/2", "--json")
    doc = json.loads(text)
    assert code == 0
    assert doc["coeffs"]["delta0''"] == "-107/2"
    assert doc["partial"] is True
    code, text = run("class", "degeneracy")
    assert code == 0 and text.startswith("-λ - (1/2)𝔞 + (1/2)𝔟")


def test_certify_emit_lp_roundtrip(tmp_path):
    path = tmp_path / "r9.lp"
    code, text = run("certify", "--emit-lp", str(path))
    assert code == 0 and "uniruled" in text
    lp = ExactLP.from_text(path.read_text())
    assert minimize(lp).optimal_value == 0
    code, text = run("solve", str(path))
    assert code == 0 and json.loads(text)["verified"] is True


def test_certify_negative_control():
    code, text = run("certify", "--perturb", "R.lambda=10")
    assert code == 1 and "no contradiction derived" in text
    doc = json.loads(run("certify", "--json", "--perturb", "R.lambda=10")[1])
    assert doc["established"] is False and doc["R.K"] == "12"


def test_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("PRYMR9_OUTPUT_DIR", str(tmp_path / "out"))
    code, text = run("verify", "--json", "--no-timing")
    assert code == 0
    assert (tmp_path / "out" / "verify.json").read_text().strip() == text.strip()


def test_curves_and_rules():
    code, text = run("curves")
    assert code == 0
    assert "R\t9\t47\t0\t8" in text and "Xi\t10\t56\t0\t8" in text
    rules = json.loads(run("rules")[1])
    assert rules["l*l"] == {"a": "1"} and len(rules) == 12
