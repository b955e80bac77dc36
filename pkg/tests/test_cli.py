import json

import pytest
from jsonschema import validate

from sturmkit.cli import main, parse_oracle

GOLDEN_EXPR = "lower((-1+1*sqrt(5))/2)"
GOLDEN_UPPER_EXPR = "upper((-1+1*sqrt(5))/2)"

BASE_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "command"],
    "properties": {
        "schema_version": {"const": 1},
        "command": {"type": "string"},
    },
}

SCHEMAS = {
    "generate": {
        "allOf": [BASE_SCHEMA],
        "required": ["window", "symbols", "rendered"],
        "properties": {
            "window": {"type": "array", "items": {"type": "integer"}},
            "symbols": {"type": "string"},
            "rendered": {"type": "string"},
        },
    },
    "check-indist": {
        "allOf": [BASE_SCHEMA],
        "required": ["status", "lengths_checked", "difference_set"],
        "properties": {
            "status": {"enum": ["pass", "fail"]},
            "lengths_checked": {"type": "integer"},
            "difference_set": {"type": "array", "items": {"type": "integer"}},
            "witness": {"type": "string"},
        },
    },
    "classify": {
        "allOf": [BASE_SCHEMA],
        "required": ["status"],
        "properties": {
            "status": {"enum": ["classified", "not_indistinguishable", "inconclusive"]},
            "case": {"enum": ["recurrent", "non_recurrent"]},
            "substitution": {"type": "object"},
            "m": {"type": "integer"},
            "witness": {"type": "string"},
            "resource": {"type": "string"},
            "base": {"type": "object"},
        },
    },
    "complexity": {
        "allOf": [BASE_SCHEMA],
        "required": ["profile", "max_n", "window"],
        "properties": {
            "profile": {"type": "array", "items": {"type": "integer"}},
        },
    },
    "christoffel": {
        "allOf": [BASE_SCHEMA],
        "required": ["p", "q", "kind", "word"],
        "properties": {
            "word": {"type": "string"},
            "palindromes": {"type": "array"},
        },
    },
    "limit-pair": {
        "allOf": [BASE_SCHEMA],
        "required": ["p", "q", "side", "x", "y"],
    },
    "derive": {
        "allOf": [BASE_SCHEMA],
        "required": ["marker", "return_words", "complete_return_words"],
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    validate(doc, SCHEMAS[doc["command"]])
    return code, doc


def test_generate_period(capsys):
    code, out, _ = run(capsys, "generate", "--expr", "lower(5/13)", "--window", "0:12")
    assert code == 0 and out.strip() == ".0010010100101"


def test_generate_evp_forms(capsys):
    for expr in ("evp(0|.10|0)", "evp(0|.|10|0)"):
        code, out, _ = run(capsys, "generate", "--expr", expr, "--window=-3:3")
        assert code == 0 and out.strip() == "000.1000"


def test_generate_json(capsys):
    code, doc = run_json(
        capsys, "generate", "--expr", "lower(5/13)", "--window", "0:12", "--format", "json"
    )
    assert code == 0 and doc["symbols"] == "0010010100101"


def test_generate_staircase(capsys):
    code, out, _ = run(
        capsys, "generate", "--expr", "lower(1/2)", "--window", "0:5", "--format", "staircase"
    )
    assert code == 0
    assert out.rstrip("\n") == "  _|\n _|\n_|"


def test_parse_oracle_composites():
    x = parse_oracle("shift(rev(sub(0:01;1:10,evp(0|.10|0))),2)")
    assert len(x.window(-5, 5)) == 11
    with pytest.raises(ValueError):
        parse_oracle("lower(5/13")
    with pytest.raises(ValueError) as err:
        parse_oracle("frob(1)")
    assert "position" in str(err.value)


def test_check_indist_exit_codes(capsys):
    code, doc = run_json(
        capsys, "check-indist", "--x", GOLDEN_EXPR, "--y", GOLDEN_UPPER_EXPR,
        "--max-len", "15", "--json",
    )
    assert code == 0 and doc["status"] == "pass"
    code, doc = run_json(
        capsys, "check-indist",
        "--x", "evp(100110|100111.|000111)", "--y", "evp(100110|.100111|000111)",
        "--max-len", "6", "--json",
    )
    assert code == 1 and doc["status"] == "fail" and doc["witness"] == "00"


def test_classify_remark_exit_1(capsys):
    code, doc = run_json(
        capsys, "classify",
        "--x", "evp(100110|100111.|000111)", "--y", "evp(100110|.100111|000111)",
        "--max-len", "8", "--json",
    )
    assert code == 1 and doc["status"] == "not_indistinguishable"
    assert doc["witness"] == "00"


def test_classify_limit_pair(capsys):
    code, doc = run_json(
        capsys, "classify",
        "--x", "evp(110|111.|011)", "--y", "evp(110|.111|011)",
        "--max-len", "12", "--json",
    )
    assert code == 0 and doc["status"] == "classified"
    assert doc["case"] == "non_recurrent"
    assert doc["base"]["rational_class"] == {"p": 2, "q": 1, "side": "above"}


def test_classify_sturmian(capsys):
    code, doc = run_json(
        capsys, "classify", "--x", GOLDEN_EXPR, "--y", GOLDEN_UPPER_EXPR,
        "--max-len", "12", "--json",
    )
    assert code == 0 and doc["case"] == "recurrent"


def test_complexity(capsys):
    code, doc = run_json(
        capsys, "complexity", "--x", GOLDEN_EXPR, "--max-n", "8",
        "--window=-10:10", "--json",
    )
    assert code == 0 and doc["profile"] == list(range(2, 10))


def test_christoffel_factorize(capsys):
    code, out, _ = run(capsys, "christoffel", "--p", "5", "--q", "8", "--factorize")
    assert code == 0 and out.strip() == "00100 10100101"
    code, doc = run_json(capsys, "christoffel", "--p", "5", "--q", "8", "--json")
    assert doc["word"] == "0010010100101"


def test_limit_pair_cmd(capsys):
    code, doc = run_json(
        capsys, "limit-pair", "--p", "0", "--q", "1", "--side", "above",
        "--window=-3:3", "--json",
    )
    assert code == 0 and doc["x"] == "001.0000"


def test_derive_cmd(capsys):
    code, doc = run_json(
        capsys, "derive", "--x", GOLDEN_EXPR, "--marker", "0",
        "--window=-40:40", "--json",
    )
    assert code == 0
    assert doc["return_words"] == ["01", "011"]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "generate", "--expr", "lower(7/5)", "--window", "0:5")
    assert code == 3 and "error" in err
    code, _, _ = run(capsys, "generate", "--expr", "lower(1/2)", "--window", "5:1")
    assert code == 3
    assert main(["no-such-command"]) == 3


def test_determinism(capsys):
    args = ["check-indist", "--x", GOLDEN_EXPR, "--y", GOLDEN_UPPER_EXPR,
            "--max-len", "10", "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second
