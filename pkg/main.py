import argparse
import importlib
import sys

from loguru import logger

from constants import (
    COMMAND_MODULES,
    EXIT_UNEXPECTED,
    MAIN_LOG_RETENTION,
    MAIN_LOG_ROTATION,
    PROJECT_NAME,
    STDERR_LOG_FORMAT,
)
from errors import PrevarietyError
from utils.documents import emit
from utils.env_setup import LOG_LEVELS, Settings, load_settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROJECT_NAME,
        description="Toric prevarieties from conical multigraded polynomial rings.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None, help="stderr log level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, module, label in COMMAND_MODULES:
        sub = subparsers.add_parser(command, help=label, parents=[common])
        importlib.import_module(module).configure_parser(sub)
    return parser


def configure_logging(settings: Settings, level: str | None = None) -> None:
    # JSON goes to stdout, so every log line goes to stderr or the log file
    logger.remove()
    logger.add(sys.stderr, level=level or settings.log_level, format=STDERR_LOG_FORMAT)
    if settings.log_file is not None:
        settings.log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(settings.log_file, rotation=MAIN_LOG_ROTATION, retention=MAIN_LOG_RETENTION, level="DEBUG")

    def log_uncaught_exceptions(exctype, value, tb):
        logger.opt(exception=(exctype, value, tb)).error("Uncaught exception!")

    sys.excepthook = log_uncaught_exceptions


def main(argv: list[str] | None = None) -> int:
    settings = load_settings()
    args = build_parser().parse_args(argv)
    configure_logging(settings, args.log_level)

    module = {command: module for command, module, _ in COMMAND_MODULES}[args.command]
    logger.info(f"Running {args.command} ({module})")
    exit_code = EXIT_UNEXPECTED
    try:
        result = importlib.import_module(module).run(args, settings)
        print(emit(result.payload))
        exit_code = result.exit_code
    except KeyboardInterrupt:
        logger.warning("Interrupted by user.")
    except PrevarietyError as e:
        logger.error(f"{type(e).__name__}: {e}")
        exit_code = e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
    finally:
        logger.info(f"{args.command} exited with code {exit_code}.")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
