"""JSON formats: instances, complexes and run-report lines.

Rationals are written as "p/q" strings and complex scalars as
``["re", "im"]`` pairs, so files round-trip bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from tvlab.core import Field, QComplex, format_scalar, parse_scalar
from tvlab.geometry import Flat, Instance, Polytope
from tvlab.matroid import matroid_from_spec, matroid_to_spec

SCHEMA_VERSION = 1


class SpecError(ValueError):
    pass


def encode_scalar(x) -> Any:
    if isinstance(x, QComplex):
        return [format_scalar(x.re), format_scalar(x.im)]
    return format_scalar(Fraction(x))


def decode_scalar(x, fld: Field):
    if isinstance(x, float):
        raise SpecError("floats are not accepted; write rationals as \"p/q\" strings")
    return parse_scalar(x, fld)


def encode_flat(flat: Flat | None) -> dict | None:
    if flat is None:
        return None
    return {
        "field": flat.field.value,
        "base": [encode_scalar(x) for x in flat.base],
        "directions": [[encode_scalar(x) for x in d] for d in flat.directions],
    }


def decode_flat(data: dict | None) -> Flat | None:
    if data is None:
        return None
    fld = Field(data["field"])
    return Flat(
        fld,
        tuple(decode_scalar(x, fld) for x in data["base"]),
        tuple(tuple(decode_scalar(x, fld) for x in d) for d in data.get("directions", [])),
    )


@dataclass
class InstanceSpec:
    """An instance plus where it came from (generator, seed, planted flat)."""

    instance: Instance
    provenance: dict = field(default_factory=dict)
    ground_truth: Flat | None = None

    def to_json(self) -> dict:
        inst = self.instance
        return {
            "schema": SCHEMA_VERSION,
            "field": inst.field.value,
            "d": inst.d,
            "k": inst.k,
            "r": inst.r,
            "polytopes": [[[encode_scalar(x) for x in v] for v in p.vertices] for p in inst.polytopes],
            "matroid": matroid_to_spec(inst.matroid),
            "coloring": inst.coloring,
            "phi": {str(i): [encode_scalar(x) for x in v] for i, v in sorted(inst.phi.items())},
            "provenance": dict(self.provenance, ground_truth=encode_flat(self.ground_truth)),
        }

    @classmethod
    def from_json(cls, data: dict) -> "InstanceSpec":
        try:
            if data.get("schema") != SCHEMA_VERSION:
                raise SpecError(f"unsupported schema version {data.get('schema')!r}")
            fld = Field(data["field"])
            polys = [Polytope([[decode_scalar(x, fld) for x in v] for v in verts], fld) for verts in data["polytopes"]]
            phi = {int(i): tuple(decode_scalar(x, fld) for x in v) for i, v in data.get("phi", {}).items()}
            inst = Instance(
                fld,
                int(data["d"]),
                int(data["k"]),
                int(data["r"]),
                polys,
                matroid_from_spec(data["matroid"]),
                phi,
                data.get("coloring"),
            )
        except SpecError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"invalid instance file: {exc}") from exc
        prov = dict(data.get("provenance", {}))
        truth = decode_flat(prov.pop("ground_truth", None))
        return cls(inst, prov, truth)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "InstanceSpec":
        return cls.from_json(json.loads(text))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "InstanceSpec":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise SpecError(str(exc)) from exc
        try:
            return cls.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: {exc}") from exc


def instances_equal(a: Instance, b: Instance) -> bool:
    return (
        a.field is b.field
        and (a.d, a.k, a.r) == (b.d, b.k, b.r)
        and a.polytopes == b.polytopes
        and matroid_to_spec(a.matroid) == matroid_to_spec(b.matroid)
        and a.phi == b.phi
        and a.coloring == b.coloring
    )


def to_plain(obj) -> Any:
    """Recursively convert scalars, tuples and flats into JSON-ready values."""
    if isinstance(obj, (Fraction, QComplex)):
        return encode_scalar(obj)
    if isinstance(obj, Flat):
        return encode_flat(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_plain(v) for v in items]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj
