import json
from pathlib import Path

import pytest

from algebra.catalog import sweedler_h4
from algebra.hopf import verify_axioms
from cli.fileformat import digest, parse, parse_text, serialize
from shared.errors import ParseError

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sweedler_document():
    return json.loads((SAMPLES / "sweedler_h4.json").read_text(encoding="utf-8"))


def test_sample_matches_the_catalog():
    H = parse(str(SAMPLES / "sweedler_h4.json"))
    assert H.name == "H4"
    assert H.labels == ("1", "g", "x", "gx")
    assert H.same_structure(sweedler_h4())
    assert verify_axioms(H).passed


def test_prime_field_sample():
    H = parse(str(SAMPLES / "z2_group_algebra.json"))
    assert H.field.descriptor == "prime:3"
    assert verify_axioms(H).passed


@pytest.mark.parametrize("fixture", ["h4", "taft3", "funS3"])
def test_serialized_algebras_parse_back(request, fixture):
    H = request.getfixturevalue(fixture)
    text = serialize(H)
    again = parse_text(text)
    assert again.same_structure(H)
    assert serialize(again) == text
    assert digest(again) == digest(H)


def test_repeated_entries_add_up():
    document = sweedler_document()
    document["mult"] = [entry for entry in document["mult"] if entry[:2] != [0, 0]]
    document["mult"] += [[0, 0, 0, "1/2"], [0, 0, 0, "1/2"]]
    assert parse_text(json.dumps(document)).same_structure(sweedler_h4())


def test_index_out_of_range():
    with pytest.raises(ParseError) as error:
        parse(str(SAMPLES / "malformed.json"))
    assert "index out of range" in str(error.value)


def test_bad_antipode_parses_but_fails_the_axioms():
    H = parse(str(SAMPLES / "z3_bad_antipode.json"))
    certificate = verify_axioms(H)
    assert not certificate.passed
    assert certificate.check("antipode").witness is not None


def test_malformed_json():
    with pytest.raises(ParseError) as error:
        parse_text('{"dim": 2,')
    assert "malformed JSON" in str(error.value)
    assert error.value.location.startswith("line 1")


def test_bad_scalar_reports_its_location():
    document = sweedler_document()
    document["counit"][1] = "one"
    with pytest.raises(ParseError) as error:
        parse_text(json.dumps(document))
    assert error.value.location == "counit[1]"


def test_float_scalars_are_rejected():
    document = sweedler_document()
    document["unit"][0] = 0.5
    with pytest.raises(ParseError):
        parse_text(json.dumps(document))


def test_schema_errors_carry_a_location():
    document = sweedler_document()
    document["dim"] = 0
    with pytest.raises(ParseError) as error:
        parse_text(json.dumps(document))
    assert error.value.location == "dim"


def test_missing_file():
    with pytest.raises(ParseError):
        parse(str(SAMPLES / "does_not_exist.json"))
