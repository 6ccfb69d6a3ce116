from dataclasses import dataclass
from pathlib import Path
import os

from dotenv import load_dotenv
from loguru import logger

from constants import (
    DEFAULT_BOX,
    DEFAULT_DEGREE_BOUND_FACTOR,
    DEFAULT_LOG_LEVEL,
    LOGS_DIR,
    ENV_BOX,
    ENV_DEGREE_BOUND_FACTOR,
    ENV_LOG_FILE,
    ENV_LOG_LEVEL,
)

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    log_level: str = DEFAULT_LOG_LEVEL
    log_file: Path | None = None
    box: int = DEFAULT_BOX
    degree_bound_factor: int = DEFAULT_DEGREE_BOUND_FACTOR


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"⚠️  {name}={raw!r} is not an integer, using {default}")
        return default
    if value < 1:
        logger.warning(f"⚠️  {name}={value} must be positive, using {default}")
        return default
    return value


def _log_level() -> str:
    raw = os.getenv(ENV_LOG_LEVEL)
    if not raw:
        return DEFAULT_LOG_LEVEL
    if raw.upper() not in LOG_LEVELS:
        logger.warning(f"⚠️  {ENV_LOG_LEVEL}={raw!r} is not a log level, using {DEFAULT_LOG_LEVEL}")
        return DEFAULT_LOG_LEVEL
    return raw.upper()


def _log_path(raw: str) -> Path:
    """Relative log file names live in the logs directory."""
    path = Path(raw)
    return path if path.is_absolute() else LOGS_DIR / path


def load_settings() -> Settings:
    """
    Load optional overrides from the .env file and the environment.
    Nothing is required; malformed values fall back to the defaults.
    """
    load_dotenv()
    log_file = os.getenv(ENV_LOG_FILE)
    settings = Settings(
        log_level=_log_level(),
        log_file=_log_path(log_file) if log_file else None,
        box=_positive_int(ENV_BOX, DEFAULT_BOX),
        degree_bound_factor=_positive_int(ENV_DEGREE_BOUND_FACTOR, DEFAULT_DEGREE_BOUND_FACTOR),
    )
    logger.debug(f"settings: {settings}")
    return settings
