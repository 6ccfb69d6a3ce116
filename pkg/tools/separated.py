#!/usr/bin/env python3
"""
separated: is the prevariety of a conical ring separated?

Reports the verdict together with both sides of the pairwise criterion for every pair of
generators: overlapping weight-cone interiors and disjoint sigma-cone interiors.
"""
import argparse
from pathlib import Path

from loguru import logger

from prevariety.fans import build_system, system_is_separated, separation_table
from tools.common import CommandResult, load_conical
from utils.env_setup import Settings
from utils.rendering import log_table


def configure_parser(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", type=Path, help="conical (or ring) document")


def run(args: argparse.Namespace, settings: Settings) -> CommandResult:
    conical, _ = load_conical(args.path)
    separated = system_is_separated(build_system(conical))
    table = separation_table(conical)
    log_table(table, "pairwise separation")
    logger.info(f"separated: {separated}")

    return CommandResult({"separated": separated, "pairs": table.to_dict(orient="records")})
