# common.py
# shared plumbing of the subcommands: results, document loading, formatting helpers

from dataclasses import dataclass, field
from pathlib import Path

from constants import EXIT_OK
from errors import SchemaError
from prevariety.cones import Cone
from prevariety.grading import ConicalRing, GradedPolyRing, Monomial, full_conical
from prevariety.lattice import IntegerMatrix
from utils.documents import document_kind, parse_conical, parse_ring, read_document


@dataclass
class CommandResult:
    payload: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK


def load(path: Path, *kinds: str) -> tuple[str, dict]:
    document = read_document(path)
    kind = document_kind(document)
    if kinds and kind not in kinds:
        raise SchemaError("$.kind", f"expected a {' or '.join(kinds)} document, got {kind}")
    return kind, document


def load_conical(path: Path, allow_ring: bool = True) -> tuple[ConicalRing, dict]:
    """A conical document; a plain ring document stands for (S, S_+)."""
    kind, document = load(path, "conical", "ring") if allow_ring else load(path, "conical")
    if kind == "ring":
        return full_conical(parse_ring(document)), document
    return parse_conical(document), document


def monomial_entry(ring: GradedPolyRing, m: Monomial) -> dict:
    return {"monomial": ring.format(m), "exponents": list(m.exponents)}


def names(ring: GradedPolyRing, monomials) -> list[str]:
    return [ring.format(m) for m in monomials]


def cone_entry(cone: Cone) -> list[list[int]]:
    return [list(g) for g in cone.generators]


def matrix_entry(m: IntegerMatrix) -> list[list[int]]:
    return m.to_lists()
