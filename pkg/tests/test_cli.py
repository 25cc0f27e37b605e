"""Tests for the command line front end."""

import json

import pytest

from holonomy import cli
from holonomy.cli import (
    CLIError,
    algebra_document,
    parse_algebra_document,
    parse_rational,
)

HE_DOC = {"n": 2, "name": "He", "basis": [[["0", "1"], ["0", "0"]]]}
NOT_CLOSED_DOC = {
    "n": 2,
    "name": "bad",
    "basis": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]],
}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- algebra documents --------------------------------------------------------


def test_document_round_trip():
    g = parse_algebra_document(HE_DOC)
    assert algebra_document(g) == HE_DOC


def test_document_round_trip_multi_matrix():
    doc = {
        "n": 2,
        "name": "Tr",
        "basis": [
            [["1", "0"], ["0", "0"]],
            [["0", "1"], ["0", "0"]],
            [["0", "0"], ["0", "1"]],
        ],
    }
    assert algebra_document(parse_algebra_document(doc)) == doc


def test_document_normalizes_unreduced_entries():
    doc = {"n": 2, "name": "", "basis": [[["0", "2/4"], ["0", "0"]]]}
    out = algebra_document(parse_algebra_document(doc))
    assert out["basis"][0][0][1] == "1/2"


def test_parse_rational_rejects_garbage():
    with pytest.raises(CLIError):
        parse_rational("1.5.2")
    with pytest.raises(CLIError):
        parse_rational("1/0")
    assert parse_rational("-3/6") == parse_rational("-1/2")


@pytest.mark.parametrize("doc,fragment", [
    ([1, 2], "JSON object"),
    ({"name": "x"}, "missing keys"),
    ({"n": 0, "basis": []}, "positive integer"),
    ({"n": 2, "name": 7, "basis": []}, "string"),
    ({"n": 2, "basis": "nope"}, "list"),
    ({"n": 2, "basis": [[["1", "0"]]]}, "2 x 2"),
    ({"n": 2, "basis": [[["1", 0], ["0", "0"]]]}, "non-string"),
])
def test_parse_algebra_document_errors(doc, fragment):
    with pytest.raises(CLIError, match=fragment):
        parse_algebra_document(doc)


def test_parse_algebra_document_closure_message():
    with pytest.raises(CLIError,
                       match=r"bracket closure violated at pair \(0, 1\)"):
        parse_algebra_document(NOT_CLOSED_DOC)


# -- check ---------------------------------------------------------------------


def test_check_he_vtwice(capsys):
    code, out, _ = run(capsys, "check", "He", "--rep", "v-twice")
    assert code == 0
    assert "first criterion: pass" in out
    assert "verdict: pass (expected pass)" in out


def test_check_hom_vtwice_fail_still_matches(capsys):
    code, out, _ = run(capsys, "check", "Hom", "--rep", "v-twice")
    assert code == 0
    assert "verdict: fail (expected fail)" in out


def test_check_plain_has_no_expectation(capsys):
    code, out, _ = run(capsys, "check", "Gl+", "--rep", "plain", "--json", "-")
    assert code == 0
    doc = json.loads(out)
    assert doc["check"]["expected"] is None
    assert doc["check"]["match"] is None
    assert doc["check"]["generic_pipeline"]["first_criterion"] is True


def test_check_file_input(tmp_path, capsys):
    path = tmp_path / "he.json"
    path.write_text(json.dumps(HE_DOC))
    code, out, _ = run(capsys, "check", "--file", str(path),
                       "--rep", "v-dual", "--json", "-")
    assert code == 0
    doc = json.loads(out)
    assert doc["check"]["algebra"] == "He"
    assert doc["check"]["document"] == HE_DOC
    assert doc["check"]["split_pipeline"]["first_criterion"] is True
    assert doc["check"]["model_pipeline"]["first_criterion"] is True


def test_check_file_wins_over_key(tmp_path, capsys):
    path = tmp_path / "he.json"
    path.write_text(json.dumps(HE_DOC))
    code, out, _ = run(capsys, "check", "SO2", "--file", str(path),
                       "--json", "-")
    assert code == 0
    assert json.loads(out)["check"]["algebra"] == "He"


def test_check_not_closed_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(NOT_CLOSED_DOC))
    code, _, err = run(capsys, "check", "--file", str(path))
    assert code == 2
    assert "bracket closure violated at pair (0, 1)" in err


def test_check_unknown_key_exits_2(capsys):
    code, _, err = run(capsys, "check", "NoSuchFamily")
    assert code == 2
    assert "error:" in err


def test_check_lambda_rules(capsys):
    code, _, err = run(capsys, "check", "CO2_lambda", "--rep", "v-twice")
    assert code == 2  # lambda required
    code, _, err = run(capsys, "check", "CO2_lambda", "--lambda", "0")
    assert code == 2  # forbidden value
    code, out, _ = run(capsys, "check", "CO2_lambda", "--lambda", "1/2",
                       "--rep", "v-twice")
    assert code == 0
    assert "verdict: fail (expected fail)" in out


def test_check_missing_input_exits_2(capsys):
    code, _, err = run(capsys, "check")
    assert code == 2
    assert "catalog key or --file" in err


def test_check_bad_json_file_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "check", "--file", str(path))
    assert code == 2
    assert "invalid JSON" in err


def test_check_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "check", "--file", "/nonexistent/x.json")
    assert code == 2
    assert "cannot read" in err


# -- classify --------------------------------------------------------------------


def test_classify_both_kinds_match(capsys):
    for kind in ("v-twice", "v-dual"):
        code, out, _ = run(capsys, "classify", "--kind", kind)
        assert code == 0
        assert "overall: match (36 rows)" in out


def test_classify_single_lambda_grid(capsys):
    code, out, _ = run(capsys, "classify", "--kind", "v-dual",
                       "--lambda-grid", "5", "--json", "-")
    assert code == 0
    doc = json.loads(out)["classification"]
    assert doc["lambda_grid"] == ["5"]
    assert doc["overall_match"] is True
    by_key = {(r["key"], r["lambda"]): r for r in doc["rows"]}
    assert by_key[("Tr-SO_lambda", "5")]["computed"] == "pass"
    assert by_key[("SO_lambda", "5")]["computed"] == "fail"
    assert len(doc["rows"]) == 19


def test_classify_empty_grid(capsys):
    code, out, _ = run(capsys, "classify", "--lambda-grid", "", "--json", "-")
    assert code == 0
    assert len(json.loads(out)["classification"]["rows"]) == 16


def test_classify_bad_grid_exits_2(capsys):
    code, _, err = run(capsys, "classify", "--lambda-grid", "1,x")
    assert code == 2


# -- connection ------------------------------------------------------------------


def test_connection_tr_passes(capsys):
    code, out, _ = run(capsys, "connection", "Tr")
    assert code == 0
    assert "verdict: pass" in out


def test_connection_co2_more_samples(capsys):
    code, out, _ = run(capsys, "connection", "CO2", "--samples", "128",
                       "--json", "-")
    assert code == 0
    doc = json.loads(out)["connection"]
    assert doc["samples"] == 128
    assert doc["passed"] is True


def test_connection_sl2_exits_2(capsys):
    code, _, err = run(capsys, "connection", "Sl2")
    assert code == 2
    assert "no coordinate construction is registered" in err


def test_connection_failing_variant_exits_1(capsys):
    code, out, _ = run(capsys, "connection", "CO2", "--variant", "bilinear")
    assert code == 1
    assert "verdict: fail" in out


def test_connection_failing_variant_serializes(capsys):
    # nonzero residuals must land in the report as plain JSON numbers
    code, out, _ = run(capsys, "connection", "Tr", "--variant", "affine",
                       "--json", "-")
    assert code == 1
    doc = json.loads(out)["connection"]
    assert doc["passed"] is False
    assert doc["boundary_residual"] > 0.1
    assert isinstance(doc["boundary_residual"], float)


def test_connection_lambda_family(capsys):
    code, out, _ = run(capsys, "connection", "Tr-SO-family",
                       "--lambda", "-1", "--json", "-")
    assert code == 0
    doc = json.loads(out)
    assert doc["connection"]["lam"] == -1.0
    assert doc["seed"] == 0


def test_connection_unknown_variant_exits_2(capsys):
    code, _, err = run(capsys, "connection", "He", "--variant", "nope")
    assert code == 2


# -- prolong ---------------------------------------------------------------------


def test_prolong_he_order1(capsys):
    code, out, _ = run(capsys, "prolong", "He", "--order", "1", "--json", "-")
    assert code == 0
    doc = json.loads(out)["prolongation"]
    assert doc["dim"] == 1
    assert doc["weak_criterion"] is True


def test_prolong_so2_weak_fail(capsys):
    code, out, _ = run(capsys, "prolong", "SO2", "--order", "1")
    assert code == 0
    assert "dim = 0" in out
    assert "weak criterion: fail" in out


def test_prolong_glplus_dim6(capsys):
    code, out, _ = run(capsys, "prolong", "Gl+")
    assert code == 0
    assert "dim = 6" in out


def test_prolong_orders_2_and_3(capsys):
    code, out, _ = run(capsys, "prolong", "He", "--order", "2", "--json", "-")
    assert code == 0
    doc = json.loads(out)["prolongation"]
    assert doc == {"algebra": "He", "lambda": None, "order": 2, "dim": 1,
                   "dim_ghat": 1, "first_criterion": True}
    code, out, _ = run(capsys, "prolong", "He", "--order", "3", "--json", "-")
    assert code == 0
    doc = json.loads(out)["prolongation"]
    assert doc["dim"] == 1
    assert doc["second_criterion"] is True


def test_prolong_bad_order_exits_2(capsys):
    code, _, _ = run(capsys, "prolong", "He", "--order", "4")
    assert code == 2


# -- catalog-list -----------------------------------------------------------------


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog-list", "--json", "-")
    assert code == 0
    rows = json.loads(out)["catalog"]
    assert len(rows) == 19
    byk = {r["key"]: r for r in rows}
    assert byk["He"]["dim_g"] == 1
    assert byk["He"]["expected_v-twice"] == "pass"
    assert byk["CO2_lambda"]["takes_lambda"] is True
    assert byk["CO2_lambda"]["forbidden_lambda"] == ["0"]
    assert byk["Gl+"]["dim_g"] == 4


# -- report plumbing ---------------------------------------------------------------


def test_reports_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "classify", "--kind", "v-twice",
                           "--json", "-")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    for _ in range(2):
        code, out, _ = run(capsys, "connection", "He", "--seed", "11",
                           "--json", "-")
        assert code == 0
        outs.append(out)
    assert outs[2] == outs[3]


def test_report_header_fields(capsys):
    code, out, _ = run(capsys, "prolong", "He", "--json", "-")
    assert code == 0
    doc = json.loads(out)
    assert doc["tool"]["name"] == "holonomy"
    assert doc["tool"]["version"]
    # the output destination is plumbing, not an input: it is stripped
    # from the echoed command so reports stay byte-identical
    assert doc["command"] == ["prolong", "He"]
    assert "wall" not in json.dumps(doc)


def test_reports_identical_across_output_targets(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a, b):
        code, _, _ = run(capsys, "classify", "--kind", "v-dual",
                         "--lambda-grid", "2", "--json", str(target))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "classify", "--kind", "v-dual",
                       "--lambda-grid", "2", "--json")
    assert code == 0
    assert out.encode() == a.read_bytes()


def test_json_to_file_keeps_table_on_stdout(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "He", "--rep", "v-twice",
                       "--json", str(target))
    assert code == 0
    assert "verdict: pass" in out
    doc = json.loads(target.read_text())
    assert doc["check"]["computed"] == "pass"


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "check" in out and "classify" in out


def test_no_subcommand_exits_2(capsys):
    code, _, _ = run(capsys)
    assert code == 2
