"""JSON Schemas (draft 2020-12) for the ``--json`` output of each command."""

from __future__ import annotations

_NUM_OR_NULL = {"type": ["number", "null"]}

VERDICT = {"enum": ["pass", "fail", "inconclusive"]}

CHECK = {
    "type": "object",
    "required": ["name", "verdict", "residual", "witness", "details"],
    "properties": {
        "name": {"type": "string"},
        "verdict": VERDICT,
        "residual": _NUM_OR_NULL,
        "witness": {},
        "details": {"type": "object"},
    },
    "additionalProperties": False,
}

CERTIFICATE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gtbend convexity certificate",
    "type": "object",
    "required": ["format", "model", "checks", "verdict", "versions"],
    "properties": {
        "format": {"const": "gtbend.certificate/1"},
        "model": {
            "type": "object",
            "required": ["m", "n", "t", "tau", "depth", "seed", "tolerances"],
            "properties": {
                "m": {"type": "integer", "minimum": 2},
                "n": {"type": "integer", "minimum": 2},
                "t": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
                "tau": {"type": "number"},
                "depth": {"type": "integer", "minimum": 0},
                "seed": {"type": "integer"},
                "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
            },
        },
        "checks": {"type": "array", "items": CHECK, "minItems": 1},
        "verdict": VERDICT,
        "versions": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "additionalProperties": False,
}

SOLVE = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "tau", "t", "residual", "tolerance", "verdict"],
    "properties": {
        "command": {"const": "solve"},
        "tau": {"type": "number"},
        "t": {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4},
        "ell1": {"type": "number"},
        "ell2": {"type": "number"},
        "residual": {"type": "number", "minimum": 0},
        "tolerance": {"type": "number"},
        "verdict": VERDICT,
    },
    "additionalProperties": False,
}

CERTIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "verdict", "failing", "out", "certificate"],
    "properties": {
        "command": {"const": "certify"},
        "verdict": VERDICT,
        "failing": {"type": "array", "items": {"type": "string"}},
        "out": {"type": ["string", "null"]},
        "certificate": CERTIFICATE,
    },
    "additionalProperties": False,
}

RENDER = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "out", "sha256", "cells", "walls"],
    "properties": {
        "command": {"const": "render"},
        "out": {"type": "string"},
        "sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "cells": {"type": "integer", "minimum": 1},
        "walls": {"type": "integer", "minimum": 0},
        "adjacency": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
    "additionalProperties": False,
}

COMPLEX = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "source", "vertices", "edges", "faces", "k", "small_cancellation", "pieces",
                 "pair", "geodesics", "hull_diameter", "bigons", "verdict"],
    "properties": {
        "command": {"const": "complex"},
        "source": {"type": "string"},
        "vertices": {"type": "integer", "minimum": 0},
        "edges": {"type": "integer", "minimum": 0},
        "faces": {"type": "integer", "minimum": 0},
        "k": {"type": "integer", "minimum": 1},
        "small_cancellation": {"type": "boolean"},
        "pieces": {
            "type": "object",
            "required": ["count", "max_length"],
            "properties": {"count": {"type": "integer"}, "max_length": {"type": "integer"}},
        },
        "link_bigons": {"type": "integer", "minimum": 0},
        "witness": {},
        "pair": {"type": ["array", "null"], "items": {"type": "integer"}},
        "distance": {"type": ["integer", "null"]},
        "geodesics": {"type": ["integer", "null"]},
        "hull_diameter": {"type": ["integer", "null"]},
        "corridors": {"type": "integer", "minimum": 0},
        "bigons": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "verdict": VERDICT,
    },
    "additionalProperties": False,
}

CONTROL = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "kind", "checks", "verdict", "expected"],
    "properties": {
        "command": {"const": "control"},
        "kind": {"enum": ["unbent", "torus", "polygon"]},
        "m": {"type": ["integer", "null"]},
        "checks": {"type": "array", "items": CHECK},
        "verdict": VERDICT,
        "expected": VERDICT,
        "inside_unit_disk": {"type": ["boolean", "null"]},
    },
    "additionalProperties": False,
}

ERROR = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["error", "exit_code"],
    "properties": {"error": {"type": "string"}, "exit_code": {"type": "integer"},
                   "line": {"type": ["integer", "null"]}},
    "additionalProperties": False,
}

BY_COMMAND = {"solve": SOLVE, "certify": CERTIFY, "render": RENDER, "complex": COMPLEX, "control": CONTROL}

__all__ = ["BY_COMMAND", "CERTIFICATE", "CERTIFY", "COMPLEX", "CONTROL", "ERROR", "RENDER", "SOLVE"]
