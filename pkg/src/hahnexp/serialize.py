"""JSON text forms of Hahn elements and series.

Canonical text is ``json.dumps`` of ``to_json()`` with default separators:
terms sorted by increasing exponent, no duplicate exponents, no zero
coefficients, scalars written in their canonical text.  Strict parsing
rejects anything else; lenient parsing accepts it and canonicalizes.
Errors carry the character offset (JSON syntax) or the JSON path of the
offending node.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import HahnExpError, ParseError
from .hahn_group import HahnElement
from .scalars import format_scalar, is_zero, parse_scalar
from .series_field import SeriesElement


def dumps(x):
    return json.dumps(x.to_json())


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, position=exc.pos) from None


def _scalar(node, path, lenient):
    if lenient and isinstance(node, (int, float)) and not isinstance(node, bool):
        node = str(node)
    if not isinstance(node, str):
        raise ParseError("expected a scalar string", position=path)
    try:
        value = parse_scalar(node)
    except HahnExpError as exc:
        raise ParseError(f"bad scalar {node!r}: {exc}", position=path) from None
    if not lenient and format_scalar(value) != node:
        raise ParseError(f"scalar {node!r} is not in canonical form", position=path)
    return value


def _terms(data, path):
    if not isinstance(data, dict) or not isinstance(data.get("terms"), list):
        raise ParseError("expected an object with a 'terms' list", position=path)
    return data["terms"]


def _check_order(keys, path, lenient):
    if lenient:
        return
    for i in range(1, len(keys)):
        if not keys[i - 1] < keys[i]:
            raise ParseError("terms are not strictly increasing", position=f"{path}.terms[{i}]")


def hahn_from_data(data, lenient=False, path="$"):
    pairs = []
    for i, term in enumerate(_terms(data, path)):
        here = f"{path}.terms[{i}]"
        if not isinstance(term, dict) or "idx" not in term or "coef" not in term:
            raise ParseError("term needs 'idx' and 'coef'", position=here)
        idx = _scalar(term["idx"], here + ".idx", lenient)
        if not isinstance(idx, Fraction):
            raise ParseError("index must be rational", position=here + ".idx")
        coef = _scalar(term["coef"], here + ".coef", lenient)
        if is_zero(coef) and not lenient:
            raise ParseError("zero coefficient", position=here + ".coef")
        pairs.append((idx, coef))
    _check_order([i for i, _ in pairs], path, lenient)
    return HahnElement(pairs)


def series_from_data(data, lenient=False, path="$"):
    pairs = []
    for i, term in enumerate(_terms(data, path)):
        here = f"{path}.terms[{i}]"
        if not isinstance(term, dict) or "exp" not in term or "coef" not in term:
            raise ParseError("term needs 'exp' and 'coef'", position=here)
        g = hahn_from_data(term["exp"], lenient, here + ".exp")
        coef = _scalar(term["coef"], here + ".coef", lenient)
        if is_zero(coef) and not lenient:
            raise ParseError("zero coefficient", position=here + ".coef")
        pairs.append((g, coef))
    _check_order([g for g, _ in pairs], path, lenient)
    trunc = data.get("trunc")
    if trunc is not None:
        trunc = hahn_from_data(trunc, lenient, path + ".trunc")
        if not lenient and any(not g < trunc for g, _ in pairs):
            raise ParseError("term at or above the truncation certificate", position=path + ".trunc")
    return SeriesElement(pairs, trunc)


def parse_hahn(text, lenient=False):
    return hahn_from_data(_load(text), lenient)


def parse_series(text, lenient=False):
    return series_from_data(_load(text), lenient)


def parse_element(text, lenient=False):
    """A series if the terms carry ``exp``, a Hahn element if they carry ``idx``."""
    data = _load(text)
    terms = _terms(data, "$")
    if "trunc" in data or (terms and isinstance(terms[0], dict) and "exp" in terms[0]):
        return series_from_data(data, lenient)
    return hahn_from_data(data, lenient)


def round_trip(text, lenient=False):
    return dumps(parse_element(text, lenient))
