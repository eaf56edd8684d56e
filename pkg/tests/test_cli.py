import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from reesalg import CoefField, PolyRing
from reesalg.cli import COMMANDS, dumps_report, main, run
from reesalg.errors import ParseError
from reesalg.instance import load_instance, load_instance_text


def fx(name):
    return str(FIXTURES / name)


PASS = {
    "sym-power": ["four_column.json"],
    "minors": ["four_column.json"],
    "detadj": ["four_column.json"],
    "closure": ["ideal_x2_y2.json"],
    "closure-equal": ["ideal_x2_y2.json"],
    "verify-cert": ["ideal_x2_y2.json"],
    "lift-cert": ["four_column.json"],
    "normalize": ["swap.json"],
    "t1-check": ["swap.json"],
    "fingen": ["four_column.json"],
    "bv": ["diag_x.json"],
    "gap": ["ideal_x2_y2.json"],
    "primary": ["ideal_x2_y2.json"],
}

# sym-power, minors and detadj compute without a falsifiable verdict (detadj holds
# for every module), so they have no checked-failure fixture.
FAIL = {
    "closure": ["non_monomial.json"],
    "closure-equal": ["not_primary.json"],
    "verify-cert": ["bad_certificate.json"],
    "lift-cert": ["bad_certificate.json"],
    "normalize": ["not_finite_length.json"],
    "t1-check": ["not_finite_length.json"],
    "fingen": ["xy_extra.json", "--k", "0"],
    "bv": ["non_monomial.json"],
    "gap": ["not_primary.json"],
    "primary": ["not_primary.json"],
}

# closure-equal only evaluates inequalities and has no size guard.
GUARD = {
    "sym-power": ["four_column.json", "--max-products", "1"],
    "minors": ["four_column.json", "--max-minors", "1"],
    "detadj": ["four_column.json", "--max-minor-size", "1"],
    "closure": ["ideal_x2_y2.json", "--max-points", "3"],
    "verify-cert": ["four_column.json", "--max-minors", "1"],
    "lift-cert": ["four_column.json", "--max-products", "1"],
    "normalize": ["four_column.json", "--max-minors", "1"],
    "t1-check": ["four_column.json", "--max-products", "1"],
    "fingen": ["four_column.json", "--max-products", "1"],
    "bv": ["diag_x.json", "--max-minor-size", "1"],
    "gap": ["ideal_x2_y2.json", "--max-generators", "3"],
    "primary": ["four_column.json", "--max-minor-size", "1"],
}


def call(cmd, args):
    return run([cmd, fx(args[0]), *args[1:], "--json"])


@pytest.mark.parametrize("cmd", sorted(PASS))
def test_exit_pass(cmd):
    code, report, _, _ = call(cmd, PASS[cmd])
    assert code == 0 and report["passed"] and report["error"] is None


@pytest.mark.parametrize("cmd", sorted(FAIL))
def test_exit_fail(cmd):
    code, report, _, _ = call(cmd, FAIL[cmd])
    assert code == 1 and not report["passed"]


@pytest.mark.parametrize("cmd", sorted(GUARD))
def test_exit_guard(cmd):
    code, report, _, _ = call(cmd, GUARD[cmd])
    assert code == 3 and report["error"]["kind"] == "guard"


@pytest.mark.parametrize("cmd", sorted(COMMANDS))
def test_exit_parse_error(cmd):
    code, report, text, _ = call(cmd, ["parse_error.json"])
    assert code == 2 and report["error"]["kind"] == "parse"
    assert "line 3, column 50" in report["error"]["message"]


def test_every_subcommand_has_a_pass_fixture():
    assert set(PASS) == set(COMMANDS)


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["no-such-command", fx("diag_x.json")])
    assert info.value.code == 2
    assert main(["bv", fx("does_not_exist.json")]) == 2
    assert main(["bv", fx("ideal_x2_y2.json"), "--n", "0"]) == 2
    assert main(["gap", fx("non_monomial.json")]) == 2  # no N given


def test_bv_diag_report():
    code, report, text, _ = run(["bv", fx("diag_x.json"), "--n", "2"])
    assert code == 0
    res = report["results"]
    assert res["minors_of_power"] == ["x^6"] and res["power_of_minors"] == ["x^6"]
    assert res["exponent"] == 3 and res["literally_equal"]
    assert "(x^6)" in text


def test_closure_text(capsys):
    assert main(["closure", fx("ideal_x2_y2.json")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "x^2, x*y, y^2"


def test_gap_not_primary_message(capsys):
    assert main(["gap", fx("not_primary.json")]) == 1
    assert "not m-primary" in capsys.readouterr().out


def test_fingen_spec_example_k1():
    code, report, _, _ = run(["fingen", fx("four_column.json")])
    assert code == 0
    assert report["results"]["verdicts"] == {"1": True, "2": True, "3": True, "4": True}


def test_json_schema_fields():
    _, report, _, _ = run(["gap", fx("ideal_x2_y2.json"), "--json"])
    assert set(report) == {"schema", "subcommand", "instance", "passed", "results", "error"}
    assert report["schema"] == 1 and len(report["instance"]) == 64
    rows = report["results"]["rows"]
    assert [r["sharp"] for r in rows] == list(range(0, 8))


def test_timings_only_on_request():
    _, report, _, _ = run(["primary", fx("ideal_x2_y2.json"), "--timings"])
    assert "timings" in report
    _, report, _, _ = run(["primary", fx("ideal_x2_y2.json")])
    assert "timings" not in report


POLY_KEYS = {"generators", "closure", "ideal", "compare_ideal", "minors", "minors_of_module", "minors_of_power",
             "power_of_minors", "transformed_generators", "enlarged_generators", "coefficients", "subject",
             "element", "g", "Z", "basis", "generator_set"}


def _poly_strings(obj, key=None):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _poly_strings(v, k)
    elif isinstance(obj, list):
        for v in obj:
            yield from _poly_strings(v, key)
    elif isinstance(obj, str) and key in POLY_KEYS:
        yield obj


@pytest.mark.parametrize("cmd", sorted(PASS))
def test_printed_polynomials_round_trip(cmd):
    args = PASS[cmd]
    inst = load_instance(fx(args[0]))
    ring = inst.module.ring if inst.module is not None else inst.ring
    _, report, _, _ = call(cmd, args)
    seen = 0
    for s in _poly_strings(report["results"]):
        p = ring.parse(s)
        assert str(p) == s
        seen += 1
    assert seen > 0


def test_report_bytes_identical_across_processes():
    cmd = [sys.executable, "-m", "reesalg", "fingen", fx("xy_extra.json"), "--k", "0", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == 1 and a.stdout == b.stdout
    report = json.loads(a.stdout)
    assert report["results"]["verdicts"]["1"] is False


def test_instance_validation_errors():
    bad_docs = [
        '{"ring": {"field": "QQ", "vars": ["x"]}, "params": {"bogus": 1}}',
        '{"ring": {"field": "ZZ", "vars": ["x"]}}',
        '{"ring": {"field": "GF", "modulus": 4, "vars": ["x"]}}',
        '{"ring": {"field": "QQ", "vars": []}}',
        '{"ring": {"field": "QQ", "vars": ["x"]}, "module": {"r": 0, "generators": ["x*T1"]}}',
        '{"ring": {"field": "QQ", "vars": ["x"]}, "module": {"r": 1, "generators": ["x*T1^2"]}}',
        '{"ring": {"field": "QQ", "vars": ["x"]}, "params": {"n": "two"}}',
        '[1, 2]',
        '{"ring": {"field": "QQ", "vars": ["x"]},\n "ideal": {"generators": ["x",]}}',
    ]
    for doc in bad_docs:
        with pytest.raises(ParseError):
            load_instance_text(doc)


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        load_instance_text('{"ring": {"field": "QQ",\n  "vars": ["x"]')
    assert info.value.line == 2


def test_prime_field_instance():
    inst = load_instance(fx("ideal_three_vars.json"))
    assert inst.ring.field == CoefField(7)
    assert inst.ring == PolyRing(CoefField(7), ("x", "y", "z"))


def test_digest_ignores_formatting():
    a = load_instance_text('{"ring": {"field": "QQ", "vars": ["x"]}, "ideal": {"generators": ["x"]}}')
    b = load_instance_text('{\n  "ideal": {"generators": ["x"]},\n  "ring": {"vars": ["x"], "field": "QQ"}\n}')
    assert a.digest == b.digest


def test_dumps_is_sorted():
    _, report, _, _ = run(["primary", fx("ideal_x2_y2.json")])
    text = dumps_report(report)
    assert text == json.dumps(json.loads(text), indent=2, sort_keys=True)
