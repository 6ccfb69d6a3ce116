#!/usr/bin/env python3
"""
cox: recover the conical ring of a system of fans.

The grading comes from the cokernel of the ray matrix and B from the complements of the
maximal cones. A top-level "rays" list in the document fixes the variables (repeated rays
allowed); otherwise the distinct cone generators are used in order of appearance.
"""
import argparse
from pathlib import Path

from loguru import logger

from prevariety.cox import irrelevant_from_cones, ray_matrix_of, ring_from_rays
from prevariety.fans import validate_system
from prevariety.grading import validate_conical
from tools.common import CommandResult, load
from utils.documents import conical_document, parse_fan_system
from utils.env_setup import Settings


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="fan_system document")


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    _, document = load(args.path, "fan_system")
    system = parse_fan_system(document)
    if not validate_system(system):
        logger.warning("the input is not a valid system of fans; recovering the ring anyway")
    rays = ray_matrix_of(system)
    ring = ring_from_rays(rays)
    conical = validate_conical(ring, irrelevant_from_cones(system, rays))
    logger.info(f"recovered grading by {ring.group} with degrees {[str(d) for d in ring.degrees]}")
    return CommandResult(conical_document(conical))
