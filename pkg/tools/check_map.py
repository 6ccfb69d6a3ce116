#!/usr/bin/env python3
"""
check-map: classify a monomial morphism, or validate a rational map of conical rings.

Morphism documents get the relevance loci and flags; when both sides are conical and a
"class_map" is given, the induced lattice map N_S -> N_R is checked as a map of systems
of fans. Rational-map documents are validated and, when valid, their induced fan map is
computed and checked.
"""
import argparse
from pathlib import Path

import pandas as pd
from loguru import logger

from constants import EXIT_VALIDATION_FAILURE
from prevariety.fans import build_system
from prevariety.maps import (
    classify,
    fan_map_for_rational_map,
    fan_map_violations,
    induced_fan_map,
    rational_map_violations,
    rational_targets,
)
from prevariety.grading import full_conical, relevant_in_B
from tools.common import CommandResult, load, matrix_entry, names
from utils.documents import parse_morphism, parse_rational_map
from utils.env_setup import Settings
from utils.rendering import log_table


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="morphism or rational_map document")


def _fan_map_entry(fm, source, target) -> dict:
    violations = fan_map_violations(fm, source, target)
    for violation in violations:
        logger.info(f"fan map violation: {violation}")
    return {
        "lattice_map": matrix_entry(fm.lattice_map),
        "class_map": dict(fm.class_map),
        "valid": not violations,
        "violations": violations,
    }


def _classification_payload(phi, conical_r, conical_s) -> dict:
    result = classify(phi, conical_r, conical_s)
    source, target = phi.source, phi.target
    conical_s = conical_s or full_conical(target)
    loci = pd.DataFrame(
        [
            {"locus": "relevant", "monomials": " ".join(names(target, result.relevant_locus))},
            {"locus": "generic", "monomials": " ".join(names(target, result.generic_locus))},
            {"locus": "rational", "monomials": " ".join(names(source, result.rational_locus))},
            {"locus": "B-relevant", "monomials": " ".join(names(target, result.b_relevant_locus))},
        ]
    )
    log_table(loci, "loci")
    return {
        "verdict": result.verdict(),
        "alpha_surjective": result.alpha_surjective,
        "relevant": result.is_relevant,
        "rationally_relevant": result.is_rationally_relevant,
        "rational": result.is_rational,
        "conical_morphism": result.is_conical_morphism,
        "rationally_relevant_conical": result.is_rationally_relevant_conical,
        "relevant_onto_image": result.relevant_onto_image,
        "relevant_locus": names(target, result.relevant_locus),
        "generic_locus": names(target, result.generic_locus),
        "rational_locus": names(source, result.rational_locus),
        "b_relevant_locus": names(target, result.b_relevant_locus),
        "rational_targets": {
            source.format(g): names(target, rational_targets(phi, conical_s, g))
            for g in relevant_in_B(conical_r or full_conical(source))
        },
        "preimage_violations": [
            {"preimage": source.format(g), "image": target.format(h)} for g, h in result.preimage_violations
        ],
    }


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    kind, document = load(args.path, "morphism", "rational_map")
    if kind == "morphism":
        phi, conical_r, conical_s, class_map = parse_morphism(document)
        payload = _classification_payload(phi, conical_r, conical_s)
        if class_map and conical_r is not None and conical_s is not None:
            fm = induced_fan_map(phi, class_map)
            payload["fan_map"] = _fan_map_entry(fm, build_system(conical_s), build_system(conical_r))
        return CommandResult(payload)

    rmap = parse_rational_map(document)
    violations = rational_map_violations(rmap)
    payload = {"valid": not violations, "violations": violations}
    if violations:
        for violation in violations:
            logger.info(f"rational map violation: {violation}")
        return CommandResult(payload, EXIT_VALIDATION_FAILURE)
    payload.update(_classification_payload(rmap.morphism, rmap.source, rmap.target))
    fm, source, target = fan_map_for_rational_map(rmap)
    payload["fan_map"] = _fan_map_entry(fm, source, target)
    return CommandResult(payload)
