import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.charfun import count_bott, enumerate_bott
from smallcover.cli import main
from smallcover.docio import (
    DocumentError,
    InputDocument,
    SearchOptions,
    parse_document,
    render_document,
)
from smallcover.charfun import bott_to_characteristic
from smallcover.complexes import product_of_simplices
from smallcover.render import (
    certificate_str,
    monomial_str,
    polynomial_str,
    tensor_term_str,
)

M3_100 = """{"polytope": {"product_of_simplices": [1, 1, 1]},
 "lambda": {"bott": {"dims": [1, 1, 1], "lower_blocks": [1, 0, 0]}}}"""

ONE_THREE_TWISTED = """{"polytope": {"product_of_simplices": [1, 3]},
 "lambda": {"bott": {"dims": [1, 3], "lower_blocks": [3]}}}"""

BAD_TRIANGLE = """{"polytope": {"dual_complex": {"dim": 2, "facets": 3,
   "maximal_simplices": [[0, 1], [1, 2], [0, 2]]}},
 "lambda": {"explicit": {"columns": [[1, 0], [1, 0], [0, 1]]}}}"""


@pytest.fixture
def docs(tmp_path):
    paths = {}
    for name, text in [
        ("m3", M3_100),
        ("onethree", ONE_THREE_TWISTED),
        ("bad", BAD_TRIANGLE),
    ]:
        f = tmp_path / f"{name}.json"
        f.write_text(text)
        paths[name] = str(f)
    return paths


# exit codes ---------------------------------------------------------------


def test_validate_ok(docs, capsys):
    assert main(["validate", docs["m3"]]) == 0
    assert "valid" in capsys.readouterr().out


def test_validate_invalid_exits_one(docs, capsys):
    assert main(["validate", docs["bad"]]) == 1
    out = capsys.readouterr().out
    assert "v1" in out and "v2" in out


def test_missing_file_exits_two(capsys):
    assert main(["validate", "/nonexistent/doc.json"]) == 2


def test_malformed_document_exits_two(tmp_path, capsys):
    f = tmp_path / "junk.json"
    f.write_text('{"polytope": 5}')
    assert main(["validate", str(f)]) == 2


def test_budget_stop_exits_three(docs, capsys):
    assert main(["bounds", docs["m3"], "--budget", "2"]) == 3
    assert "budget hit" in capsys.readouterr().out


def test_repro_filter_no_match_exits_two(capsys):
    assert main(["repro", "--filter", "zzz-not-a-row"]) == 2


# output content -------------------------------------------------------------


def test_bounds_text_is_byte_stable(docs, capsys):
    main(["bounds", docs["m3"]])
    first = capsys.readouterr().out
    main(["bounds", docs["m3"]])
    second = capsys.readouterr().out
    assert first == second
    assert "tc     in [5, 7]" in first
    assert "bar(y2)^3 * bar(y3) != 0" in first


def test_bounds_json_structure(docs, capsys):
    assert main(["bounds", docs["m3"], "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 3
    assert payload["invariants"]["tc"]["lo"] == 5
    assert payload["invariants"]["tc"]["hi"] == 7
    assert payload["zcl"]["value"] == 4
    assert payload["zcl"]["certificate"]["witness"] == [[1, 1, 0], [0, 1, 1]]


def test_cohomology_output(docs, capsys):
    assert main(["cohomology", docs["m3"]]) == 0
    out = capsys.readouterr().out
    assert "graded dimensions: [1, 3, 3, 1]" in out
    assert main(["cohomology", docs["m3"], "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dims"] == [1, 3, 3, 1]
    assert payload["survivors"] == [3, 4, 5]


def test_cohomology_max_degree_truncates_basis(docs, capsys):
    assert main(["cohomology", docs["m3"], "--max-degree", "1"]) == 0
    out = capsys.readouterr().out
    assert "H^1" in out and "H^2" not in out


def test_classify_reports_hidden_product(docs, capsys):
    assert main(["classify", docs["onethree"]]) == 0
    out = capsys.readouterr().out
    assert "case 3" in out
    assert "product ring" in out


def test_classify_rejects_wrong_shape(docs, capsys):
    assert main(["classify", docs["m3"]]) == 2


def test_repro_single_row(capsys):
    assert main(["repro", "--filter", "rpn.2"]) == 0
    out = capsys.readouterr().out
    assert "PASS rpn.2" in out


def test_repro_json(capsys):
    assert main(["repro", "--filter", "tcs.rp1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["rows"][0]["name"] == "tcs.rp1"


def test_module_entry_point(docs):
    proc = subprocess.run(
        [sys.executable, "-m", "smallcover", "validate", docs["m3"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "valid" in proc.stdout


# document round trips --------------------------------------------------------

small_tower = (
    st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3)
    .filter(lambda dims: sum(dims) <= 5)
    .flatmap(
        lambda dims: st.integers(min_value=0, max_value=count_bott(tuple(dims)) - 1).map(
            lambda idx: (tuple(dims), idx)
        )
    )
)


def nth_tower(dims, idx):
    for k, b in enumerate(enumerate_bott(dims)):
        if k == idx:
            return b
    raise AssertionError


@settings(max_examples=40, deadline=None)
@given(small_tower)
def test_bott_document_round_trip(data):
    dims, idx = data
    b = nth_tower(dims, idx)
    doc = InputDocument(
        polytope=product_of_simplices(list(dims)),
        lam=bott_to_characteristic(b),
        bott=b,
        options=SearchOptions(),
    )
    text = render_document(doc)
    again = parse_document(text)
    assert again == doc
    assert render_document(again) == text


def test_explicit_document_round_trip():
    text = """{"polytope": {"dual_complex": {"dim": 2, "facets": 5,
       "maximal_simplices": [[0,1],[1,2],[2,3],[3,4],[0,4]]}},
      "lambda": {"explicit": {"columns": [[1,0],[0,1],[1,1],[1,0],[0,1]]}},
      "options": {"strategy": "full", "exponent_cap": 3,
                  "assert_rz_simply_connected": true}}"""
    doc = parse_document(text)
    assert doc.bott is None
    assert doc.options.strategy == "full"
    rendered = render_document(doc)
    assert parse_document(rendered) == doc
    assert render_document(parse_document(rendered)) == rendered


def test_default_options_are_omitted():
    doc = parse_document(M3_100)
    assert doc.options == SearchOptions()
    assert "options" not in json.loads(render_document(doc))


def test_unknown_option_rejected():
    text = M3_100[:-1] + ', "options": {"strateggy": "full"}}'
    with pytest.raises(DocumentError):
        parse_document(text)


# renderers --------------------------------------------------------------------


def test_monomial_rendering():
    assert monomial_str((0, 0)) == "1"
    assert monomial_str((2, 0, 1)) == "y1^2y3"
    assert polynomial_str([(0, 2), (1, 1)]) == "y1y2+y2^2"
    assert polynomial_str([]) == "0"
    assert tensor_term_str(((1, 1, 0), (0, 1, 1))) == "y1y2 (x) y2y3"


def test_certificate_rendering():
    from smallcover.invariants import CertFactor, Certificate

    cert = Certificate(
        factors=(CertFactor("bar(y2)", 3), CertFactor("bar(y3)", 1)),
        witness=((1, 1, 0), (0, 1, 1)),
    )
    assert (
        certificate_str(cert)
        == "bar(y2)^3 * bar(y3) != 0, witness y1y2 (x) y2y3"
    )
    assert certificate_str(None) == "no nonzero product found"
