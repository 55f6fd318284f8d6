import json

import pytest

from hahnexp import scalars
from hahnexp.errors import ParseError
from hahnexp.hahn_group import HahnElement, e
from hahnexp.serialize import dumps, parse_element, parse_hahn, parse_series, round_trip
from hahnexp.series_field import SeriesElement, t

HALF = '{"terms": [{"exp": {"terms": [{"idx": "0", "coef": "1"}]}, "coef": "1/2"}], "trunc": null}'


def test_canonical_round_trip():
    assert round_trip(HALF) == HALF
    a = SeriesElement([(e(0, -1), scalars.exp(1) - 1), (e(2), 3)], e(3))
    assert round_trip(dumps(a)) == dumps(a)
    g = e(-1, 2) + e(5)
    assert parse_hahn(dumps(g)) == g
    assert isinstance(parse_element(dumps(g)), HahnElement)
    assert isinstance(parse_element(HALF), SeriesElement)


def test_unsorted_terms():
    text = json.dumps({"terms": [{"idx": "2", "coef": "1"}, {"idx": "0", "coef": "1"}]})
    with pytest.raises(ParseError) as info:
        parse_hahn(text)
    assert "terms[1]" in str(info.value)
    assert parse_hahn(text, lenient=True) == e(0) + e(2)


def test_zero_coefficient():
    text = json.dumps({"terms": [{"exp": {"terms": []}, "coef": "0"},
                                 {"exp": {"terms": [{"idx": "0", "coef": "1"}]}, "coef": "2"}],
                       "trunc": None})
    with pytest.raises(ParseError):
        parse_series(text)
    assert parse_series(text, lenient=True) == t(1, 2)


def test_syntax_and_shape_errors():
    with pytest.raises(ParseError) as info:
        parse_series('{"terms": [')
    assert "at 11" in str(info.value)
    with pytest.raises(ParseError):
        parse_series('{"terms": [{"coef": "1"}]}')
    with pytest.raises(ParseError):
        parse_hahn('{"terms": [{"idx": "(exp 1)", "coef": "1"}]}')
    with pytest.raises(ParseError):
        parse_hahn('{"terms": [{"idx": "0", "coef": "2/4"}]}')
    assert parse_hahn('{"terms": [{"idx": 0, "coef": "2/4"}]}', lenient=True) == e(0, scalars.Fraction(1, 2))
    with pytest.raises(ParseError):
        parse_series('{"terms": [{"exp": {"terms": [{"idx": "0", "coef": "5"}]}, "coef": "1"}], '
                     '"trunc": {"terms": [{"idx": "0", "coef": "3"}]}}')
    with pytest.raises(ParseError):
        parse_element('[1, 2]')
