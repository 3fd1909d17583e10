"""JSON Schemas (draft 2020-12) for every command's JSON output, built as plain data.

Helper functions generate the repetitive parts (nullable numbers, test
entries, error bodies) the same way for every command.
"""

from config import APP_VERSION
from utilities.errors import SCHEMA_VERSION

DRAFT = "https://json-schema.org/draft/2020-12/schema"

S = {"type": "string"}
I = {"type": "integer"}
B = {"type": "boolean"}
N = {"type": "number"}
NULL_N = {"type": ["number", "null"]}
NULL_I = {"type": ["integer", "null"]}
STRINGS = {"type": "array", "items": S}
VERSION = {"const": SCHEMA_VERSION}


def _obj(props, required=None, closed=True):
    schema = {"type": "object", "properties": props}
    schema["required"] = list(required if required is not None else props)
    if closed:
        schema["additionalProperties"] = False
    return schema


def _array(items, min_items=0):
    schema = {"type": "array", "items": items}
    if min_items:
        schema["minItems"] = min_items
    return schema


def _document(title, props, required=None):
    return {"$schema": DRAFT, "title": title, "x-app-version": APP_VERSION, **_obj(props, required)}


def _error_body():
    return _obj(
        {"code": S, "message": S, "details": {"type": "object"}, "path": S, "line": I},
        required=["code", "message"],
    )


def _pair_detail():
    return _obj({"index": I, "from": S, "to": S, "tau": NULL_N, "comparable": I, "skipped": B})


def _season_report():
    props = {
        "series": S,
        "year": I,
        "entity": S,
        "method": S,
        "tau_ev": {"type": "number", "minimum": -1, "maximum": 1},
        "ns": {"type": "number", "minimum": 0, "maximum": 1},
        "skipped_pairs": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 2},
        "n": {"type": "integer", "minimum": 2},
        "published_ns": NULL_N,
        "flagged": B,
        "pairs": _array(_pair_detail()),
    }
    return _obj(props, required=[k for k in props if k != "pairs"])


def _test_entry():
    return _obj({
        "name": {"enum": ["shapiro_wilk", "t_paired", "t_pooled", "t_welch"]},
        "samples": STRINGS,
        "method_tag": S,
        "statistic": N,
        "p_value": {"type": "number", "minimum": 0, "maximum": 1},
        "df": NULL_N,
        "n": NULL_I,
        "reject_null": B,
    })


def _test_error():
    body = _error_body()
    body["properties"] = {"name": S, "samples": STRINGS, **body["properties"]}
    body["required"] = ["name", "samples", "code", "message"]
    return body


def _summary_row():
    return _obj({
        "group": S,
        "n": {"type": "integer", "minimum": 2},
        "mean": N,
        "sample_std": {"type": "number", "minimum": 0},
        "min": N,
        "q1": N,
        "median": N,
        "q3": N,
        "max": N,
    })


def _table_cell():
    position = {"type": ["integer", "null"], "minimum": 1}
    return {
        "oneOf": [
            _obj({"race": S, "position": position}),
            _obj({"race": S, "score": {"type": "integer", "minimum": 0}, "m1": position, "m2": position}),
        ]
    }


def build_schemas():
    return {
        "ns": _document("rankdrift ns", {
            "schema_version": VERSION,
            "penalty": {"type": "number", "minimum": 0, "maximum": 0.5},
            "reports": _array(_season_report(), min_items=1),
        }),
        "summary": _document("rankdrift summary", {
            "schema_version": VERSION,
            "group_by": STRINGS,
            "groups": _array(_summary_row(), min_items=1),
        }),
        "tests": _document("rankdrift tests", {
            "schema_version": VERSION,
            "alpha": N,
            "tests": _array(_test_entry()),
            "variance_ratio": _obj({
                "samples": STRINGS,
                "ratio": NULL_N,
                "limit": N,
                "pooled_allowed": B,
            }),
            "notes": STRINGS,
            "errors": _array(_test_error()),
        }),
        "compare": _document("rankdrift compare", {
            "schema_version": VERSION,
            "f1": _array(_obj({"series": S, "n": I, "mean": N}), min_items=1),
            "football": _array(_obj({"series": S, "n": I, "mean": N}), min_items=1),
            "ratios": _array(_obj({"f1": S, "football": S, "ratio": N}), min_items=1),
        }),
        "table": _document("rankdrift table", {
            "schema_version": VERSION,
            "year": I,
            "entity": {"enum": ["drivers", "constructors"]},
            "races": STRINGS,
            "m": I,
            "n": I,
            "roster_size": I,
            "team_count": I,
            "rows": _array(_obj({"id": S, "name": S, "total": I, "cells": _array(_table_cell())})),
        }),
        "error": _document("rankdrift error record", {
            "schema_version": VERSION,
            "error": _error_body(),
        }),
    }


SCHEMA_NAMES = tuple(build_schemas())
