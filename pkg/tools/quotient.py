#!/usr/bin/env python3
"""
quotient: chart-wise quotient of a system of fans by a sublattice L of N_S.

Dumps one piece per chart (selected face, quotient lattice L', projection, projected
cone) and cross-checks every piece against the invariant semigroup enumerated in the box.
"""
import argparse
from pathlib import Path

from constants import EXIT_OK, EXIT_VALIDATION_FAILURE
from prevariety.quotient import assemble_quotient, quotient_oracle, quotient_system
from tools.common import CommandResult, cone_entry, load, load_conical, matrix_entry
from utils.documents import parse_sublattice
from utils.env_setup import Settings
from utils.rendering import log_table


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="conical (or ring) document")
    parser.add_argument("--sublattice", type=Path, required=True, help="sublattice document for L")
    parser.add_argument("--box", type=int, default=None, help="coordinate box of the semigroup enumeration")


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    conical, _ = load_conical(args.path)
    _, document = load(args.sublattice, "sublattice")
    lattice = parse_sublattice(document)
    box = args.box or settings.box

    pieces = quotient_system(conical, None, lattice)
    assembly = assemble_quotient(pieces)
    oracle = quotient_oracle(conical, pieces, lattice, box)
    log_table(oracle, "invariant semigroup cross-check")

    checked = [bool(a) for a in oracle["agrees"] if a is not None]
    payload = {
        "pieces": [
            {
                "label": piece.label,
                "selected_face": cone_entry(piece.selected_face),
                "lattice": [list(v) for v in piece.lattice.vectors],
                "projection": matrix_entry(piece.projection),
                "quotient_rank": piece.quotient_rank,
                "cone": cone_entry(piece.image_cone),
            }
            for piece in assembly.pieces
        ],
        "single_lattice": assembly.single_lattice,
        "oracle": oracle.to_dict(orient="records"),
        "oracle_agrees": all(checked),
        "box": box,
    }
    return CommandResult(payload, EXIT_OK if all(checked) else EXIT_VALIDATION_FAILURE)
