#!/usr/bin/env python3
"""
ring-info: summary of a graded ring or conical ring document.

Prints the grading group, the variable degrees, Gen^D(S), a basis of the grading kernel
M_S and the relevance table. For conical documents also Gen^D_B(S) and the monomial
generators of a subring whose irrelevant ideal is B.
"""
import argparse
from pathlib import Path

from loguru import logger

from prevariety.grading import (
    generators_irrelevant,
    grading_kernel,
    relevance_table,
    relevant_in_B,
    subring_degree_bound,
    subring_for_B,
)
from prevariety.maps import subring_localizes
from tools.common import CommandResult, load_conical, monomial_entry, names
from utils.documents import group_document
from utils.env_setup import Settings
from utils.rendering import log_table


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="ring or conical document")
    parser.add_argument(
        "--degree-bound", type=int, default=None,
        help="total degree bound for the subring search (default: factor x largest B-generator degree)",
    )


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    conical, document = load_conical(args.path)
    ring = conical.ring
    table = relevance_table(ring)
    log_table(table, "relevance of squarefree rank-many supports")

    payload = {
        "group": group_document(ring.group),
        "names": list(ring.names),
        "degrees": [list(d.lifted()) for d in ring.degrees],
        "generators": [monomial_entry(ring, g) for g in generators_irrelevant(ring)],
        "kernel_basis": [list(v) for v in grading_kernel(ring).vectors],
        "relevance": table.to_dict(orient="records"),
    }
    if "B" in document:
        gens_b = relevant_in_B(conical)
        bound = args.degree_bound or subring_degree_bound(conical, settings.degree_bound_factor)
        subring = subring_for_B(conical, bound)
        payload["B"] = names(ring, conical.b_generators)
        payload["B_generators"] = names(ring, gens_b)
        payload["subring"] = {
            "generators": names(ring, subring),
            "degree_bound": bound,
            "realizes_B": subring_localizes(conical, subring),
        }
    logger.info(f"{len(payload['generators'])} generators of the irrelevant ideal")
    return CommandResult(payload)
