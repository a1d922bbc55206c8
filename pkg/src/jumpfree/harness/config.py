"""Experiment configuration: one JSON document, schema-checked, unknown keys rejected."""
from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from .rules import ConfigError

SCHEMA_VERSION = 1

_rule = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "params": {"type": "object"},
        "seed": {"type": "integer"},
    },
    "required": ["name"],
    "additionalProperties": False,
}

_point_list = {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "seed": {"type": "integer"},
        "k": {"type": "integer", "minimum": 2, "maximum": 4},
        "p": {"type": "integer", "minimum": 2},
        "r": {"type": "integer", "minimum": 1},
        "t": {"type": "integer", "minimum": 1},
        "domain": {
            "oneOf": [
                {
                    "type": "object",
                    "properties": {"kind": {"const": "explicit"}, "points": _point_list},
                    "required": ["kind", "points"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "random"},
                        "size": {"type": "integer", "minimum": 1},
                        "coordMax": {"type": "integer", "minimum": 0},
                    },
                    "required": ["kind", "size", "coordMax"],
                    "additionalProperties": False,
                },
                {
                    "type": "object",
                    "properties": {
                        "kind": {"const": "cube"},
                        "E": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                        "extra": {"type": "integer", "minimum": 0},
                        "density": {"type": "number", "minimum": 0, "maximum": 1},
                    },
                    "required": ["kind", "E"],
                    "additionalProperties": False,
                },
            ]
        },
        "edgeRule": _rule,
        "selectionRule": _rule,
        "rhoRule": _rule,
        "iRule": _rule,
        "family": {"enum": ["t_hat", "s_hat", "h_rho", "min"]},
        "budgets": {
            "type": "object",
            "properties": {
                "tupleCap": {"type": "integer", "minimum": 1},
                "candidateCap": {"type": "integer", "minimum": 1},
                "solverCap": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "verify": {
            "type": "object",
            "properties": {
                "trials": {"type": "integer", "minimum": 0},
                "properties": {"type": "array", "items": {"type": "string"}},
                "sizeMax": {"type": "integer", "minimum": 1},
                "rMax": {"type": "integer", "minimum": 1},
                "kChoices": {"type": "array", "items": {"type": "integer", "minimum": 2, "maximum": 4}},
                "thin": {"type": "number", "minimum": 0, "maximum": 1},
                "fault": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "solve": {
            "type": "object",
            "properties": {
                "instances": {"type": "string"},
                "exhaustive": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "bench": {
            "type": "object",
            "properties": {
                "ps": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
                "k": {"type": "integer", "minimum": 2, "maximum": 4},
                "t": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "expect": {
            "type": "object",
            "properties": {
                "t_hat": {"type": "array"},
                "s_hat": {"type": "array"},
                "h_rho": {"type": "array"},
            },
            "additionalProperties": False,
        },
        "outputPath": {"type": "string"},
    },
    "required": ["version", "seed", "k", "domain"],
    "additionalProperties": False,
}

ALL_PROPERTIES = ["s_structure", "rho_equivalence", "regularity_agreement", "jumpfree_t", "jumpfree_s",
                  "capped_transfer", "kk_bound"]


@dataclass
class Budgets:
    tuple_cap: int = 20_000
    candidate_cap: int = 50_000
    solver_cap: int = 30


@dataclass
class ExperimentConfig:
    seed: int
    k: int
    domain: dict
    p: int = 2
    r: int = 1
    t: int = 1
    edge_rule: dict = field(default_factory=lambda: {"name": "full-downward"})
    selection_rule: dict | None = None
    rho_rule: dict = field(default_factory=lambda: {"name": "max"})
    i_rule: dict = field(default_factory=lambda: {"name": "zero"})
    family: str = "h_rho"
    budgets: Budgets = field(default_factory=Budgets)
    verify: dict = field(default_factory=dict)
    solve: dict = field(default_factory=dict)
    bench: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)
    output_path: str | None = None
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def selection(self) -> dict:
        return self.selection_rule or {"name": "min-index", "params": {"r": self.r}}

    def canonical(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(",", ":"))

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


def parse_config(doc: dict, seed_override: int | None = None) -> ExperimentConfig:
    doc = copy.deepcopy(doc)
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"invalid config at {path}: {exc.message}") from None
    if seed_override is not None:
        doc["seed"] = seed_override
    for prop in doc.get("verify", {}).get("properties", []):
        if prop not in ALL_PROPERTIES:
            raise ConfigError(f"unknown verify property {prop!r}")
    if doc["domain"]["kind"] == "explicit":
        for x in doc["domain"]["points"]:
            if len(x) != doc["k"]:
                raise ConfigError(f"point {x} does not have arity {doc['k']}")
    b = doc.get("budgets", {})
    return ExperimentConfig(
        seed=doc["seed"],
        k=doc["k"],
        domain=doc["domain"],
        p=doc.get("p", 2),
        r=doc.get("r", 1),
        t=doc.get("t", 1),
        edge_rule=doc.get("edgeRule", {"name": "full-downward"}),
        selection_rule=doc.get("selectionRule"),
        rho_rule=doc.get("rhoRule", {"name": "max"}),
        i_rule=doc.get("iRule", {"name": "zero"}),
        family=doc.get("family", "h_rho"),
        budgets=Budgets(b.get("tupleCap", 20_000), b.get("candidateCap", 50_000),
                        b.get("solverCap", 30)),
        verify=doc.get("verify", {}),
        solve=doc.get("solve", {}),
        bench=doc.get("bench", {}),
        expect=doc.get("expect", {}),
        output_path=doc.get("outputPath"),
        raw=doc,
    )


def load_config(path, seed_override=None) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(doc, seed_override)
