#!/usr/bin/env python3
"""
roundtrip: ring -> fans -> ring, or fans -> ring -> fans.

A conical document runs the ring roundtrip, a fan_system document the fan roundtrip.
--seed draws a random simplicial instance and runs both.
"""
import argparse
import random
from pathlib import Path

from loguru import logger

from constants import EXIT_OK, EXIT_VALIDATION_FAILURE
from prevariety.cox import roundtrip_fan, roundtrip_ring
from prevariety.fans import build_system
from prevariety.sampling import random_simplicial_instance
from tools.common import CommandResult, load, load_conical
from utils.documents import conical_document, parse_fan_system
from utils.env_setup import Settings


def configure_parser(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("path", type=Path, nargs="?", help="conical, ring or fan_system document")
    source.add_argument("--seed", type=int, default=None, help="run on a random simplicial instance")


def _report_entry(report) -> dict:
    return {
        "ok": report.ok,
        "automorphism": [list(d.lifted()) for d in report.automorphism],
        "diagnosis": report.diagnosis,
    }


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    if args.seed is not None:
        conical = random_simplicial_instance(random.Random(args.seed))
        logger.info(f"seed {args.seed}: ring graded by {conical.ring.group}")
        ring_report = roundtrip_ring(conical)
        fan_report = roundtrip_fan(build_system(conical))
        payload = {
            "instance": conical_document(conical),
            "ring": _report_entry(ring_report),
            "fan": _report_entry(fan_report),
            "ok": ring_report.ok and fan_report.ok,
        }
    else:
        kind, document = load(args.path, "conical", "ring", "fan_system")
        if kind == "fan_system":
            report = roundtrip_fan(parse_fan_system(document))
        else:
            conical, _ = load_conical(args.path)
            report = roundtrip_ring(conical)
        payload = _report_entry(report)
    if not payload["ok"]:
        logger.warning(f"roundtrip failed: {payload}")
    return CommandResult(payload, EXIT_OK if payload["ok"] else EXIT_VALIDATION_FAILURE)
