import copy
import json
from fractions import Fraction

import pytest

from homnr.codec.io import (
    load_document, parse_algebra, parse_decomposition, parse_deformation, parse_maps,
    parse_representation, parse_theta, serialize_algebra, serialize_representation, serialize_verification,
)
from homnr.codec.models import FIXTURES, fixture_names
from homnr.errors import InputError
from homnr.services.structures import HOM_LIE, verify_structure
from homnr.utils.helpers import format_rational, parse_rational
from tests.helpers import fixture

LINE = {"name": "Q", "dim": 1, "labels": ["f1"], "kind": "left-leibniz"}


def _broken(**changes) -> dict:
    doc = copy.deepcopy(FIXTURES["FIX-LZ2"])
    doc.update(changes)
    return doc


def test_rationals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2 ") == -2
    assert parse_rational(5) == 5
    assert format_rational(Fraction(-6, 8)) == "-3/4"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("value", [1.5, True, "1/0", "x", None])
def test_non_rationals_are_refused(value):
    with pytest.raises(InputError) as exc:
        parse_rational(value, "beta[1][1]")
    assert exc.value.field == "beta[1][1]"


def test_fixtures_survive_serialization():
    for name in fixture_names():
        a = fixture(name)
        assert parse_algebra(serialize_algebra(a), name) == a


def test_fixture_labels_and_kind():
    sl2 = fixture("FIX-SL2")
    assert sl2.space.labels == ("e", "f", "h")
    assert sl2.kind == HOM_LIE
    assert fixture("FIX-LZ2", "right-leibniz").kind == "right-leibniz"


@pytest.mark.parametrize("changes,field", [
    ({"dim": 0}, "algebra.dim"),
    ({"kind": "jordan"}, "algebra.kind"),
    ({"labels": ["e1", "e1"]}, "algebra.labels"),
    ({"beta": [["1", "0"]]}, "algebra.beta"),
    ({"beta": [["1.5", "0"], ["0", "1"]]}, "algebra.beta[1][1]"),
    ({"product": [{"in": [3, 1], "out": {"e1": "1"}}]}, "algebra.product[1].in"),
    ({"product": [{"in": [1, 1], "out": {"e9": "1"}}]}, "algebra.product[1]"),
    ({"product": [{"in": [1, 1], "out": {"e1": 0.5}}]}, "algebra.product[1].out.e1"),
    ({"product": [{"in": [1]}]}, "algebra.product[1]"),
])
def test_algebra_errors_name_their_field(changes, field):
    with pytest.raises(InputError) as exc:
        parse_algebra(_broken(**changes))
    assert exc.value.field == field
    assert str(exc.value).startswith(f"{field}: ")


def test_missing_dim():
    doc = _broken()
    del doc["dim"]
    with pytest.raises(InputError) as exc:
        parse_algebra(doc)
    assert exc.value.field == "algebra"


def test_repeated_entries_add_up():
    doc = _broken(product=[{"in": [2, 2], "out": {"e1": "1/2"}}, {"in": [2, 2], "out": {"e1": "1/2"}}])
    assert parse_algebra(doc).product == fixture("FIX-LZ2").product


def test_files_and_malformed_json(tmp_path):
    good = tmp_path / "lz2.json"
    good.write_text(json.dumps(FIXTURES["FIX-LZ2"]), encoding="utf-8")
    assert parse_algebra(str(good)) == fixture("FIX-LZ2")

    bad = tmp_path / "bad.json"
    bad.write_text("{\"dim\": 2,", encoding="utf-8")
    with pytest.raises(InputError) as exc:
        load_document(str(bad))
    assert exc.value.field == "file"

    listing = tmp_path / "list.json"
    listing.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(InputError):
        load_document(listing)

    with pytest.raises(InputError):
        load_document(str(tmp_path / "missing.json"))


def test_representation_with_relative_paths(tmp_path):
    (tmp_path / "lz2.json").write_text(json.dumps(FIXTURES["FIX-LZ2"]), encoding="utf-8")
    doc = {"L": "lz2.json", "V": LINE, "theta": [{"in": [2, 2], "out": {"f1": "1"}}]}
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(doc), encoding="utf-8")

    rep, theta, actions = parse_representation(str(path))
    assert rep.L == fixture("FIX-LZ2")
    assert rep.lambda_l.is_zero() and rep.lambda_r.is_zero()
    assert actions is None
    assert theta.support() == [(1, 1)]
    assert theta.value((1, 1)) == (0, 0, 1)

    again = serialize_representation(rep, theta)
    assert again["theta"] == [{"in": [2, 2], "out": {"f1": "1"}}]
    assert parse_theta(again, rep) == theta


def test_representation_action_count_is_checked():
    doc = {"L": FIXTURES["FIX-HEIS"], "V": dict(LINE, kind="hom-lie"), "action": [[["1"]]]}
    with pytest.raises(InputError) as exc:
        parse_representation(doc)
    assert exc.value.field == "rep.action"


def test_mixed_entries_are_read_against_their_blocks():
    doc = {"L": FIXTURES["FIX-LZ2"], "V": LINE, "lambda_l": [{"in": [1, 2], "out": {"f1": "1"}}]}
    with pytest.raises(InputError) as exc:
        parse_representation(doc)
    assert exc.value.field == "rep.lambda_l[1].in"


def test_deformation_document():
    doc = {"base": FIXTURES["FIX-ABELIAN2"],
           "coeffs": [[{"in": [2, 2], "out": {"e1": "1"}}]],
           "compare": {"coeffs": [[]], "phi": [["0", "0"], ["0", "0"]]}}
    d, compare = parse_deformation(doc)
    assert d.order == 1
    assert d.coefficient(1) == fixture("FIX-LZ2").product
    assert compare["phi"] == [["0", "0"], ["0", "0"]]


def test_decomposition_document_needs_its_maps():
    with pytest.raises(InputError) as exc:
        parse_decomposition({"total": FIXTURES["FIX-LZ2"], "projection": [["1", "0"]]})
    assert exc.value.field == "extension"


def test_maps_default_to_identity_and_unknown_keys_are_logged(caplog):
    psi, phi = parse_maps({"psi": [["2"]], "chi": []})
    assert psi.entries == ((Fraction(2),),)
    assert phi is None
    assert "unknown keys chi" in caplog.text


def test_verification_report_uses_labels():
    report = verify_structure(fixture("FIX-NONLEIB1"))
    doc = serialize_verification(report, ["e1"])
    assert doc["holds"] is False
    assert doc["failing"] == 1
    assert doc["witnesses"] == [{"condition": "left-leibniz", "args": ["e1", "e1", "e1"], "defect": ["1"]}]
    assert doc["multiplicative"] is True
