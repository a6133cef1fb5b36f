"""JSON Schemas for the wire formats: documents, reports, verdicts, and
service envelopes. Tests validate every response body against these."""

from __future__ import annotations

import jsonschema

_LEVEL = {"enum": ["none", "warning", "suspicious"]}

_FLAGS = {
    "type": "object",
    "required": ["text", "math", "cite", "combined", "flagged"],
    "properties": {
        "text": _LEVEL,
        "math": _LEVEL,
        "cite": _LEVEL,
        "combined": _LEVEL,
        "flagged": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

_CHANNELS = {
    "type": "object",
    "required": ["text", "math", "cite"],
    "additionalProperties": False,
    "properties": {
        "text": {
            "type": "object",
            "required": [
                "available",
                "jaccard",
                "containment_first_in_second",
                "containment_second_in_first",
                "both_empty",
                "matched_spans",
            ],
            "properties": {
                "available": {"type": "boolean"},
                "jaccard": {"type": "number", "minimum": 0, "maximum": 1},
                "containment_first_in_second": {"type": "number", "minimum": 0, "maximum": 1},
                "containment_second_in_first": {"type": "number", "minimum": 0, "maximum": 1},
                "both_empty": {"type": "boolean"},
                "matched_spans": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["first_start", "first_end", "second_start", "second_end"],
                        "properties": {
                            "first_start": {"type": "integer", "minimum": 0},
                            "first_end": {"type": "integer", "minimum": 0},
                            "second_start": {"type": "integer", "minimum": 0},
                            "second_end": {"type": "integer", "minimum": 0},
                        },
                    },
                },
            },
            "additionalProperties": False,
        },
        "math": {
            "type": "object",
            "required": ["available", "histogram", "sequence", "category", "evidence"],
            "properties": {
                "available": {"type": "boolean"},
                "histogram": {"type": "number", "minimum": 0, "maximum": 1},
                "sequence": {"type": "number", "minimum": 0, "maximum": 1},
                "category": {"type": "string"},
                "evidence": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
            },
            "additionalProperties": False,
        },
        "cite": {
            "type": "object",
            "required": ["available", "coupling", "sequence"],
            "properties": {
                "available": {"type": "boolean"},
                "coupling": {"type": "number", "minimum": 0, "maximum": 1},
                "sequence": {"type": "number", "minimum": 0, "maximum": 1},
            },
            "additionalProperties": False,
        },
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["pair", "channels"],
    "properties": {
        "pair": {
            "type": "object",
            "required": ["first", "second", "first_year", "second_year"],
            "properties": {
                "first": {"type": "string"},
                "second": {"type": "string"},
                "first_year": {"type": "integer"},
                "second_year": {"type": "integer"},
            },
            "additionalProperties": False,
        },
        "channels": _CHANNELS,
        "flags": _FLAGS,
    },
    "additionalProperties": False,
}

DOCUMENT_SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["id", "title", "authors", "year", "language"],
    "properties": {
        "id": {"type": "string"},
        "title": {"type": "string"},
        "authors": {"type": "array", "items": {"type": "string"}},
        "year": {"type": "integer"},
        "language": {"type": "string"},
        "journal": {"type": ["string", "null"]},
        "formula_count": {"type": "integer", "minimum": 0},
        "reference_count": {"type": "integer", "minimum": 0},
    },
}

DOCUMENT_LIST_SCHEMA = {
    "type": "object",
    "required": ["documents"],
    "properties": {
        "documents": {"type": "array", "items": DOCUMENT_SUMMARY_SCHEMA},
    },
}

PAIR_SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["first", "second", "flags"],
    "properties": {
        "first": {"type": "string"},
        "second": {"type": "string"},
        "flags": _FLAGS,
        "scores": {
            "type": "object",
            "properties": {
                "text": {"type": ["number", "null"]},
                "math": {"type": ["number", "null"]},
                "cite": {"type": ["number", "null"]},
            },
        },
    },
}

PAIR_LIST_SCHEMA = {
    "type": "object",
    "required": ["pairs"],
    "properties": {"pairs": {"type": "array", "items": PAIR_SUMMARY_SCHEMA}},
}

VERDICT_SCHEMA = {
    "type": "object",
    "required": ["first", "second", "reviewer", "decision", "note", "timestamp", "token"],
    "properties": {
        "first": {"type": "string"},
        "second": {"type": "string"},
        "reviewer": {"type": "string"},
        "decision": {"type": "string"},
        "note": {"type": "string"},
        "timestamp": {"type": "string"},
        "token": {"type": "string"},
    },
    "additionalProperties": False,
}

VERDICT_LIST_SCHEMA = {
    "type": "object",
    "required": ["verdicts"],
    "properties": {"verdicts": {"type": "array", "items": VERDICT_SCHEMA}},
}

THRESHOLDS_SCHEMA = {
    "type": "object",
    "required": ["text", "cite", "math"],
    "additionalProperties": False,
    "properties": {
        channel: {
            "type": "object",
            "required": ["warning", "suspicious"],
            "properties": {
                "warning": {"type": "number", "minimum": 0, "maximum": 1},
                "suspicious": {"type": "number", "minimum": 0, "maximum": 1},
            },
            "additionalProperties": False,
        }
        for channel in ("text", "cite", "math")
    },
}

HEALTH_SCHEMA = {
    "type": "object",
    "required": ["status", "documents"],
    "properties": {
        "status": {"enum": ["ok"]},
        "documents": {"type": "integer", "minimum": 0},
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error", "detail"],
    "properties": {
        "error": {"type": "string"},
        "detail": {"type": "string"},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "report": REPORT_SCHEMA,
    "document_summary": DOCUMENT_SUMMARY_SCHEMA,
    "document_list": DOCUMENT_LIST_SCHEMA,
    "pair_list": PAIR_LIST_SCHEMA,
    "verdict": VERDICT_SCHEMA,
    "verdict_list": VERDICT_LIST_SCHEMA,
    "thresholds": THRESHOLDS_SCHEMA,
    "health": HEALTH_SCHEMA,
    "error": ERROR_SCHEMA,
}


def validate(payload, name: str) -> None:
    """Raise jsonschema.ValidationError if payload does not conform."""
    jsonschema.validate(payload, SCHEMAS[name])
