"""
documents.py

JSON interchange documents: reading with schema checks, and emitting.

Every document may carry a "kind"; without one the kind is inferred from its keys.
Integers may be written as JSON numbers or as decimal strings; emitted integers beyond
64 bits are written as strings. Schema errors name the JSON path of the offending field,
for example `$.degrees[2][1]`.
"""

import json
from pathlib import Path
from typing import Any

import numpy as np
from loguru import logger

from constants import INT64_LIMIT
from errors import DimensionMismatch, DocumentError, SchemaError
from prevariety.cones import Cone
from prevariety.fans import LabelledCone, SystemOfFans
from prevariety.grading import ConicalRing, FgAbGroup, GradedPolyRing, Monomial, validate_conical
from prevariety.lattice import IntegerMatrix, Sublattice
from prevariety.maps import GroupHom, RationalConeMap, RingMorphism

KINDS = ("ring", "conical", "fan_system", "morphism", "rational_map", "sublattice")


# ================================
# Reading
# ================================
def read_document(path: Path) -> dict:
    """Load a JSON object from disk; parse failures carry line and column."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}") from e
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(document, dict):
        raise SchemaError("$", "a document must be a JSON object")
    logger.debug(f"read {document_kind(document)} document from {path}")
    return document


def document_kind(document: dict) -> str:
    kind = document.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise SchemaError("$.kind", f"unknown kind {kind!r}, expected one of {list(KINDS)}")
        return kind
    if "choices" in document:
        return "rational_map"
    if "images" in document:
        return "morphism"
    if "cones" in document:
        return "fan_system"
    if "B" in document:
        return "conical"
    if "group" in document:
        return "ring"
    if "basis" in document and "ambient" in document:
        return "sublattice"
    raise SchemaError("$", "cannot infer the document kind from its keys")


def _field(obj: dict, key: str, location: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(location, "expected an object")
    if key not in obj:
        raise SchemaError(location, f"missing field {key!r}")
    return obj[key]


def _int(value: Any, location: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(location, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise SchemaError(location, f"expected an integer, got {value!r}")


def _list(value: Any, location: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise SchemaError(location, f"expected a list, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise SchemaError(location, f"expected {length} entries, got {len(value)}")
    return value


def _int_vector(value: Any, location: str, length: int | None = None) -> tuple[int, ...]:
    entries = _list(value, location, length)
    return tuple(_int(x, f"{location}[{i}]") for i, x in enumerate(entries))


def _int_rows(value: Any, location: str, length: int | None = None) -> list[tuple[int, ...]]:
    return [_int_vector(row, f"{location}[{i}]", length) for i, row in enumerate(_list(value, location))]


def parse_group(obj: Any, location: str = "$.group") -> FgAbGroup:
    rank = _int(_field(obj, "rank", location), f"{location}.rank")
    torsion = _int_vector(obj.get("torsion", []), f"{location}.torsion")
    try:
        return FgAbGroup(rank, torsion)
    except DimensionMismatch as e:
        raise SchemaError(location, str(e)) from e


def parse_ring(obj: Any, location: str = "$") -> GradedPolyRing:
    group = parse_group(_field(obj, "group", location), f"{location}.group")
    degrees = _int_rows(_field(obj, "degrees", location), f"{location}.degrees", group.generator_count)
    for i, degree in enumerate(degrees):
        for j, d in enumerate(group.torsion):
            residue = degree[group.free_rank + j]
            if not 0 <= residue < d:
                raise SchemaError(
                    f"{location}.degrees[{i}][{group.free_rank + j}]", f"torsion residue {residue} outside [0, {d})"
                )
    names = obj.get("names", [])
    if not isinstance(names, list) or not all(isinstance(name, str) for name in names):
        raise SchemaError(f"{location}.names", "expected a list of strings")
    if names and len(names) != len(degrees):
        raise SchemaError(f"{location}.names", f"{len(names)} names for {len(degrees)} variables")
    return GradedPolyRing.create(group, degrees, names)


def _monomials(value: Any, location: str, n: int) -> list[Monomial]:
    monomials = []
    for i, exponents in enumerate(_int_rows(value, location, n)):
        if any(e < 0 for e in exponents):
            raise SchemaError(f"{location}[{i}]", "negative exponent")
        monomials.append(Monomial(exponents))
    return monomials


def parse_conical(obj: Any, location: str = "$") -> ConicalRing:
    ring = parse_ring(obj, location)
    generators = _monomials(_field(obj, "B", location), f"{location}.B", ring.n)
    return validate_conical(ring, generators)


def parse_basis(obj: Any, n: int, location: str = "$") -> Sublattice | None:
    """The optional explicit grading-kernel basis of a ring document."""
    if "basis" not in obj:
        return None
    rows = _int_rows(obj["basis"], f"{location}.basis", n)
    try:
        return Sublattice(n, IntegerMatrix.from_rows(rows, n))
    except DimensionMismatch as e:
        raise SchemaError(f"{location}.basis", str(e)) from e


def parse_sublattice(obj: Any, location: str = "$") -> Sublattice:
    ambient = _int(_field(obj, "ambient", location), f"{location}.ambient")
    rows = _int_rows(_field(obj, "basis", location), f"{location}.basis", ambient)
    return Sublattice.from_vectors(rows, ambient)


def parse_fan_system(obj: Any, location: str = "$") -> SystemOfFans:
    rank = _int(_field(obj, "rank", location), f"{location}.rank")
    rays = None
    if "rays" in obj:
        rays = tuple(_int_rows(obj["rays"], f"{location}.rays", rank))
    cones = []
    for i, entry in enumerate(_list(_field(obj, "cones", location), f"{location}.cones")):
        where = f"{location}.cones[{i}]"
        label = _field(entry, "label", where)
        if not isinstance(label, str):
            raise SchemaError(f"{where}.label", "expected a string")
        generators = _int_rows(_field(entry, "rays", where), f"{where}.rays", rank)
        indices = None
        if "ray_indices" in entry:
            indices = _int_vector(entry["ray_indices"], f"{where}.ray_indices")
            if rays is None or any(not 0 <= k < len(rays) for k in indices):
                raise SchemaError(f"{where}.ray_indices", "indices need a top-level ray list covering them")
        cones.append(LabelledCone(label, Cone.of(generators, rank), indices))
    labels = [c.label for c in cones]
    if len(set(labels)) != len(labels):
        raise SchemaError(f"{location}.cones", "cone labels must be distinct")

    overlaps = []
    glued = set()
    for k, entry in enumerate(_list(obj.get("overlaps", []), f"{location}.overlaps")):
        where = f"{location}.overlaps[{k}]"
        first, second = _field(entry, "i", where), _field(entry, "j", where)
        if first not in labels or second not in labels:
            raise SchemaError(where, f"unknown cone label in ({first!r}, {second!r})")
        shared = tuple(
            Cone.of(_int_rows(gens, f"{where}.cones[{m}]", rank), rank)
            for m, gens in enumerate(_list(_field(entry, "cones", where), f"{where}.cones"))
        )
        i, j = labels.index(first), labels.index(second)
        if frozenset((i, j)) in glued:
            raise SchemaError(where, f"duplicate overlap for ({first!r}, {second!r})")
        glued.add(frozenset((i, j)))
        # an entry glues in both directions
        overlaps.append((i, j, shared))
        overlaps.append((j, i, shared))
    return SystemOfFans(rank, tuple(cones), tuple(overlaps), rays)


def _ring_or_conical(obj: Any, location: str) -> tuple[GradedPolyRing, ConicalRing | None]:
    if isinstance(obj, dict) and "B" in obj:
        conical = parse_conical(obj, location)
        return conical.ring, conical
    return parse_ring(obj, location), None


def _alpha(obj: dict, source: GradedPolyRing, target: GradedPolyRing, location: str) -> GroupHom:
    """alpha as a matrix: one row per target generator, one column per source generator."""
    if "alpha" not in obj:
        if source.group != target.group:
            raise SchemaError(location, "alpha may only be omitted when source and target groups agree")
        return GroupHom.identity(source.group)
    rows = _int_rows(obj["alpha"], f"{location}.alpha", source.group.generator_count)
    if len(rows) != target.group.generator_count:
        raise SchemaError(f"{location}.alpha", f"expected {target.group.generator_count} rows, got {len(rows)}")
    columns = [tuple(row[c] for row in rows) for c in range(source.group.generator_count)]
    return GroupHom.from_lifted(source.group, target.group, columns)


def parse_morphism(obj: Any, location: str = "$"):
    """(phi, conical source or None, conical target or None, class map)."""
    source, conical_r = _ring_or_conical(_field(obj, "source", location), f"{location}.source")
    target, conical_s = _ring_or_conical(_field(obj, "target", location), f"{location}.target")
    images = _monomials(_field(obj, "images", location), f"{location}.images", target.n)
    if len(images) != source.n:
        raise SchemaError(f"{location}.images", f"expected {source.n} images, got {len(images)}")
    phi = RingMorphism(source, target, tuple(images), _alpha(obj, source, target, location))
    class_map = obj.get("class_map", {})
    if not isinstance(class_map, dict) or not all(isinstance(v, str) for v in class_map.values()):
        raise SchemaError(f"{location}.class_map", "expected an object mapping labels to labels")
    return phi, conical_r, conical_s, tuple(class_map.items())


def parse_rational_map(obj: Any, location: str = "$") -> RationalConeMap:
    source = parse_conical(_field(obj, "source", location), f"{location}.source")
    target = parse_conical(_field(obj, "target", location), f"{location}.target")
    images = _monomials(_field(obj, "images", location), f"{location}.images", target.ring.n)
    if len(images) != source.ring.n:
        raise SchemaError(f"{location}.images", f"expected {source.ring.n} images, got {len(images)}")
    phi = RingMorphism(source.ring, target.ring, tuple(images), _alpha(obj, source.ring, target.ring, location))
    choices = []
    for k, entry in enumerate(_list(_field(obj, "choices", location), f"{location}.choices")):
        where = f"{location}.choices[{k}]"
        (g,) = _monomials([_field(entry, "g", where)], f"{where}.g", source.ring.n)
        (f,) = _monomials([_field(entry, "f", where)], f"{where}.f", target.ring.n)
        choices.append((g, f))
    return RationalConeMap(source, target, phi, tuple(choices))


# ================================
# Emitting
# ================================
def _encode(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > INT64_LIMIT else value
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def emit(payload: dict) -> str:
    return json.dumps(_encode(payload), indent=2)


def group_document(group: FgAbGroup) -> dict:
    return {"rank": group.free_rank, "torsion": list(group.torsion)}


def ring_document(ring: GradedPolyRing) -> dict:
    return {
        "kind": "ring",
        "group": group_document(ring.group),
        "degrees": [list(d.lifted()) for d in ring.degrees],
        "names": list(ring.names),
    }


def conical_document(conical: ConicalRing) -> dict:
    document = ring_document(conical.ring)
    document["kind"] = "conical"
    document["B"] = [list(b.exponents) for b in conical.b_generators]
    return document


def sublattice_document(lattice: Sublattice) -> dict:
    return {"kind": "sublattice", "ambient": lattice.ambient_rank, "basis": [list(v) for v in lattice.vectors]}


def fan_document(s: SystemOfFans) -> dict:
    document: dict = {"kind": "fan_system", "rank": s.ambient_rank}
    if s.rays is not None:
        document["rays"] = [list(r) for r in s.rays]
    cones = []
    for labelled in s.maximal_cones:
        entry: dict = {"label": labelled.label, "rays": [list(g) for g in labelled.cone.generators]}
        if labelled.ray_indices is not None:
            entry["ray_indices"] = list(labelled.ray_indices)
        cones.append(entry)
    document["cones"] = cones
    overlaps = [
        {"i": s.labels[i], "j": s.labels[j], "cones": [[list(g) for g in c.generators] for c in shared]}
        for i, j, shared in s.overlaps
        if i < j
    ]
    if overlaps:
        document["overlaps"] = overlaps
    return document
