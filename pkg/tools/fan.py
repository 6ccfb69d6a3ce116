#!/usr/bin/env python3
"""
fan: the system of fans of a conical ring.

With --basis explicit the grading-kernel basis is read from the document's "basis"
field; otherwise the Hermite basis of M_S is used. --svg draws rank-2 systems; other
ranks get a face-lattice summary instead.
"""
import argparse
from pathlib import Path

from loguru import logger

from errors import SchemaError
from prevariety.fans import build_system, validate_system
from tools.common import CommandResult, load_conical
from utils.documents import fan_document, parse_basis
from utils.env_setup import Settings
from utils.rendering import face_lattice_summary, log_table, render_fan_svg


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="conical (or ring) document")
    parser.add_argument("--basis", choices=("auto", "explicit"), default="auto", help="grading-kernel basis")
    parser.add_argument("--svg", type=Path, default=None, help="write an SVG drawing (ambient rank 2 only)")


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    conical, document = load_conical(args.path)
    basis = None
    if args.basis == "explicit":
        basis = parse_basis(document, conical.ring.n)
        if basis is None:
            raise SchemaError("$", "--basis explicit needs a 'basis' field in the document")
    system = build_system(conical, basis)
    validate_system(system)

    payload = fan_document(system)
    if system.ambient_rank != 2:
        summary = face_lattice_summary(system)
        log_table(summary, "face lattice")
        payload["face_lattice"] = summary.to_dict(orient="records")
    if args.svg is not None:
        if system.ambient_rank == 2:
            render_fan_svg(system, args.svg)
        else:
            logger.warning(f"no SVG for ambient rank {system.ambient_rank}; see the face-lattice summary")
    return CommandResult(payload)
