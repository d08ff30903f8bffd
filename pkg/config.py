import logging
import os
from enum import Enum

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_RANK_BUDGET = 200_000
DEFAULT_SEED = 20240601


class ReportFormat(Enum):
    """
    Output formats for command reports.

    Attributes:
        JSON (str): Machine-readable report, sorted keys.
        MARKDOWN (str): Human-readable report with verdict tables.
    """
    JSON = "json"
    MARKDOWN = "markdown"


class CorpusProfile(Enum):
    """
    Size of the acceptance suite run by the corpus command.

    Attributes:
        FULL (str): Degree bounds and sample counts of the acceptance criteria.
        QUICK (str): Smaller bounds and samples for smoke runs.
    """
    FULL = "full"
    QUICK = "quick"


def load_configuration():
    """
    Load and validate configuration from environment variables.

    Reads a .env file next to this module (existing environment variables
    win), parses the DBT_* settings and converts them to their types.

    Returns:
        dict: Settings with keys RANK_BUDGET, DEFAULT_SEED, REPORT_FORMAT,
            LOG_LEVEL, LOG_FILE, CORPUS_DIR, CORPUS_PROFILE and REPORT_TIMING.

    Raises:
        ValueError: If an integer setting cannot be parsed or is not positive.
    """
    dotenv_path = os.path.join(os.path.dirname(__file__), '.env')
    load_dotenv(dotenv_path, override=False)

    config = {
        'RANK_BUDGET': _get_int('DBT_RANK_BUDGET', DEFAULT_RANK_BUDGET),
        'DEFAULT_SEED': _get_int('DBT_DEFAULT_SEED', DEFAULT_SEED),
        'REPORT_FORMAT': _get_enum('DBT_REPORT_FORMAT', ReportFormat, ReportFormat.JSON),
        'CORPUS_PROFILE': _get_enum('DBT_CORPUS_PROFILE', CorpusProfile, CorpusProfile.FULL),

        # Logging
        'LOG_LEVEL': os.getenv('DBT_LOG_LEVEL', 'INFO').strip().upper() or 'INFO',
        'LOG_FILE': os.getenv('DBT_LOG_FILE', 'deligne_bar_toolkit.log').strip() or None,

        'CORPUS_DIR': os.getenv('DBT_CORPUS_DIR', '').strip() or None,
        'REPORT_TIMING': os.getenv('DBT_REPORT_TIMING', 'false').strip().lower() == 'true',
    }
    return config


def _get_int(name, default):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if name == 'DBT_RANK_BUDGET' and value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def _get_enum(name, enum_cls, default):
    raw = os.getenv(name, default.value).strip().lower()
    try:
        return enum_cls(raw)
    except ValueError:
        logger.error(f"Invalid {name}: '{raw}'. Defaulting to {default.value}.")
        return default
