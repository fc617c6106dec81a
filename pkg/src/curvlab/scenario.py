"""Scenario files: JSON documents describing one curvature tensor to check.

A scenario holds exactly one of ``extrinsic``, ``intrinsic`` or ``family``,
plus an optional ``tolerance`` and ``seed``.  Floats are written with
``repr`` precision, which round-trips every double exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .curvature import CurvTensor, make_curvature
from .errors import DimensionMismatch, SchemaError
from .families import FAMILY_IDS, FamilyInstance, build_family
from .submanifold import AmbientSpace, ShapeOperatorSet, gauss_curvature

_NUM = {"type": "number"}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "extrinsic": {
            "type": "object",
            "properties": {
                "ambient": {
                    "type": "object",
                    "properties": {"dim": {"type": "integer", "minimum": 1}, "curvature": _NUM},
                    "required": ["dim", "curvature"],
                    "additionalProperties": False,
                },
                "submanifold_dim": {"type": "integer", "minimum": 1},
                "shape_operators": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"type": "array", "items": {"type": "array", "items": _NUM}},
                },
            },
            "required": ["ambient", "submanifold_dim", "shape_operators"],
            "additionalProperties": False,
        },
        "intrinsic": {
            "type": "object",
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "components": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer"}] * 4 + [_NUM],
                        "minItems": 5,
                        "maxItems": 5,
                    },
                },
            },
            "required": ["dim", "components"],
            "additionalProperties": False,
        },
        "family": {
            "type": "object",
            "properties": {
                "family_id": {"enum": list(FAMILY_IDS)},
                "params": {"type": "object", "additionalProperties": _NUM},
                "seed": {"type": "integer"},
            },
            "required": ["family_id", "params"],
            "additionalProperties": False,
        },
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
    },
    "oneOf": [
        {"required": ["extrinsic"], "not": {"anyOf": [{"required": ["intrinsic"]}, {"required": ["family"]}]}},
        {"required": ["intrinsic"], "not": {"anyOf": [{"required": ["extrinsic"]}, {"required": ["family"]}]}},
        {"required": ["family"], "not": {"anyOf": [{"required": ["extrinsic"]}, {"required": ["intrinsic"]}]}},
    ],
    "additionalProperties": False,
}


@dataclass
class Scenario:
    kind: str
    body: dict
    tolerance: float = 1e-9
    seed: int = 0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_dict(cls, doc: Any) -> "Scenario":
        try:
            jsonschema.validate(doc, SCHEMA)
        except jsonschema.ValidationError as exc:
            raise SchemaError(f"invalid scenario: {exc.message}") from None
        kind = next(k for k in ("extrinsic", "intrinsic", "family") if k in doc)
        return cls(kind, doc[kind], float(doc.get("tolerance", 1e-9)), int(doc.get("seed", 0)))

    def to_dict(self) -> dict:
        return {self.kind: self.body, "tolerance": self.tolerance, "seed": self.seed}

    # -- realisation -------------------------------------------------------

    def shape(self) -> tuple[AmbientSpace, ShapeOperatorSet] | None:
        if self.kind == "extrinsic":
            amb = AmbientSpace(float(self.body["ambient"]["curvature"]), int(self.body["ambient"]["dim"]))
            A = np.array(self.body["shape_operators"], dtype=float)
            n = int(self.body["submanifold_dim"])
            if A.ndim != 3 or A.shape[1:] != (n, n):
                raise DimensionMismatch(f"shape operators must be p x {n} x {n}, got {A.shape}")
            return amb, ShapeOperatorSet(A, tol=self.tolerance)
        if self.kind == "family":
            inst = self.family()
            return (inst.ambient, inst.shape) if inst.shape is not None else None
        return None

    def family(self) -> FamilyInstance | None:
        if self.kind != "family":
            return None
        if "family" not in self._cache:
            seed = int(self.body.get("seed", self.seed))
            self._cache["family"] = build_family(self.body["family_id"], self.body["params"], seed)
        return self._cache["family"]

    def tensor(self) -> CurvTensor:
        if self.kind == "intrinsic":
            return make_curvature(int(self.body["dim"]), self.body["components"], self.tolerance)
        if self.kind == "family":
            return self.family().intrinsic
        amb, S = self.shape()
        return gauss_curvature(amb, S)


def load_scenario(path: str | Path) -> Scenario:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc.msg})") from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    return Scenario.from_dict(doc)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, default=_default)


def _default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def intrinsic_scenario(R: CurvTensor, tol: float = 1e-9, seed: int = 0) -> dict:
    """Scenario document listing one representative per nonzero symmetry orbit."""
    comps = []
    n = R.n
    seen = set()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    key = min((i, j, k, l), (k, l, i, j))
                    if key in seen:
                        continue
                    seen.add(key)
                    v = float(R.comp[i, j, k, l])
                    if v != 0.0:
                        comps.append([*key, v])
    return {"intrinsic": {"dim": n, "components": comps}, "tolerance": tol, "seed": seed}


def family_scenario(inst: FamilyInstance, seed: int = 0, tol: float = 1e-9) -> dict:
    params = {k: float(v) for k, v in inst.params.items()}
    return {"family": {"family_id": inst.family_id, "params": params, "seed": seed}, "tolerance": tol, "seed": seed}
