"""
constants.py

Centralized configuration values for the conical-prevariety project:
- File and directory paths (logs, bundled example documents)
- Exit codes of the command-line interface
- Defaults of the computational knobs (enumeration box, degree bound, seeds)
- The table of CLI subcommands and the modules implementing them

All paths are built off ROOT_DIR (the directory containing this file).
"""

from pathlib import Path

# Root directory for the project
ROOT_DIR = Path(__file__).parent
TOOLS_DIR = ROOT_DIR / "tools"
DATA_DIR = ROOT_DIR / "data"

# ================================
# Common constants
# ================================
PROJECT_NAME = "conical-prevariety"

# Integers beyond this magnitude are string-encoded in emitted JSON
INT64_LIMIT = 2**63 - 1

# ================================
# main.py constants
# ================================
# Exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_VALIDATION_FAILURE = 2
EXIT_PARSE_ERROR = 3
EXIT_PRECONDITION = 4

# Logging settings for main
LOGS_DIR = ROOT_DIR / "logs"
MAIN_LOG_ROTATION = "1 week"
MAIN_LOG_RETENTION = "4 weeks"
DEFAULT_LOG_LEVEL = "WARNING"
STDERR_LOG_FORMAT = "<level>{level: <8}</level> | {name}:{function} - {message}"

# Subcommands: (command name, module, label)
COMMAND_MODULES = [
    ("ring-info", "tools.ring_info", "Ring summary"),
    ("fan", "tools.fan", "System of fans"),
    ("separated", "tools.separated", "Separatedness verdict"),
    ("cox", "tools.cox", "Reverse construction"),
    ("check-map", "tools.check_map", "Morphism classification"),
    ("quotient", "tools.quotient", "Subtorus quotient"),
    ("roundtrip", "tools.roundtrip", "Anti-equivalence roundtrip"),
]

# ================================
# env_setup.py constants
# ================================
ENV_PREFIX = "PREVARIETY_"
ENV_LOG_LEVEL = ENV_PREFIX + "LOG_LEVEL"
ENV_LOG_FILE = ENV_PREFIX + "LOG_FILE"
ENV_BOX = ENV_PREFIX + "BOX"
ENV_DEGREE_BOUND_FACTOR = ENV_PREFIX + "DEGREE_BOUND_FACTOR"

# ================================
# grading.py constants
# ================================
# subring_for_B searches monomials up to this multiple of the largest B-generator degree
DEFAULT_DEGREE_BOUND_FACTOR = 2
DEFAULT_VARIABLE_NAMES = "xyzw"

# ================================
# quotient.py constants
# ================================
DEFAULT_BOX = 10

# ================================
# sampling.py constants
# ================================
DEFAULT_SEED = 0
SAMPLE_ENTRY_RANGE = 3
SAMPLE_MAX_ATTEMPTS = 200

# ================================
# rendering.py constants
# ================================
SVG_FIGURE_SIZE = (5, 5)
SVG_RAY_LENGTH = 1.0
SVG_CONE_ALPHA = 0.25
