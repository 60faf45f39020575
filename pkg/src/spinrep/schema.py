"""JSON Schema for CLI report documents."""

SCHEMA_VERSION = "1.0"

_number = {"type": "number"}
_exact = {"type": ["string", "null"]}

_spectrum_class = {
    "type": "object",
    "required": ["value", "multiplicity", "residual", "snapped", "snap_kind", "exact", "exact_verified"],
    "properties": {
        "value": _number,
        "multiplicity": {"type": "integer", "minimum": 1},
        "residual": _number,
        "snapped": {"type": "boolean"},
        "snap_kind": {"type": ["string", "null"]},
        "exact": _exact,
        "exact_verified": {"type": "boolean"},
    },
}

_spectrum = {
    "type": "object",
    "required": ["dim", "trace", "tol", "classes"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "trace": _number,
        "tol": _number,
        "classes": {"type": "array", "items": _spectrum_class},
    },
}

_claim = {
    "type": "object",
    "required": ["claim_id", "quote", "samples", "seed", "max_residual", "tolerance", "status", "expect", "asserted",
                 "details"],
    "properties": {
        "claim_id": {"type": "string"},
        "quote": {"type": "string"},
        "samples": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer"},
        "max_residual": _number,
        "tolerance": _number,
        "status": {"enum": ["PASS", "FAIL", "DISCREPANCY_WITH_PAPER"]},
        "expect": {"enum": ["zero", "nonzero"]},
        "asserted": {"type": "boolean"},
        "details": {"type": "object"},
    },
}

_closure = {
    "type": "object",
    "required": ["generator_count", "closure_dimension", "stabilization_depth", "stabilized", "level_dims"],
    "properties": {
        "generator_count": {"type": "integer"},
        "closure_dimension": {"type": "integer"},
        "stabilization_depth": {"type": "integer"},
        "stabilized": {"type": "boolean"},
        "level_dims": {"type": "array", "items": {"type": "integer"}},
    },
}

RESULTS = {
    "build": {
        "type": "object",
        "required": ["format", "version", "dim", "entries"],
        "properties": {
            "format": {"const": "spinrep-matrix"},
            "dim": {"type": "integer"},
            "entries": {"type": "array", "items": {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}},
            "rational": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        },
    },
    "spectrum": {
        "type": "object",
        "required": ["spectrum"],
        "properties": {"spectrum": _spectrum, "decomposition": {"type": "array"}, "multiplet_check": {"type": "object"}},
    },
    "multiplets": {
        "type": "object",
        "required": ["table", "h0_levels"],
        "properties": {
            "table": {
                "type": "object",
                "required": ["rows", "dimension", "expected_dimension", "sum_rule_ok"],
                "properties": {
                    "rows": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["total_spin", "multiplicity", "states"],
                            "properties": {
                                "total_spin": {"type": "string"},
                                "multiplicity": {"type": "integer"},
                                "states": {"type": "integer"},
                            },
                        },
                    },
                    "dimension": {"type": "integer"},
                    "expected_dimension": {"type": "integer"},
                    "sum_rule_ok": {"type": "boolean"},
                },
            },
            "h0_levels": _spectrum,
        },
    },
    "verify": {
        "type": "object",
        "required": ["suite", "claims", "summary"],
        "properties": {
            "suite": {"type": "string"},
            "claims": {"type": "array", "items": _claim},
            "summary": {
                "type": "object",
                "properties": {s: {"type": "integer"} for s in ("PASS", "FAIL", "DISCREPANCY_WITH_PAPER")},
            },
        },
    },
    "qrep": {
        "type": "object",
        "required": ["action"],
        "properties": {
            "action": {"enum": ["closure", "jops", "dual"]},
            "parent_closure": _closure,
            "lifted_closure": _closure,
        },
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "spinrep report",
    "type": "object",
    "required": ["schema_version", "tool", "version", "command", "config", "provenance", "result"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {"const": "spinrep"},
        "version": {"type": "string"},
        "command": {"enum": sorted(RESULTS)},
        "config": {"type": "object"},
        "provenance": {"type": "object"},
        "timestamp": {"type": "string"},
        "result": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"command": {"const": cmd}}}, "then": {"properties": {"result": schema}}}
        for cmd, schema in sorted(RESULTS.items())
    ],
}
