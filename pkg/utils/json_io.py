import json
import logging
from pathlib import Path

from algebra.errors import MalformedInput

logger = logging.getLogger(__name__)


def load_json(path):
    """
    Read a JSON document, naming the file in every failure.

    Raises:
        MalformedInput: If the file is missing, unreadable or not valid JSON.
    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError as e:
        raise MalformedInput(f"{path}: file not found") from e
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
    except OSError as e:
        raise MalformedInput(f"{path}: {e.strerror}") from e
    logger.debug(f"Loaded {path}")
    return data


def dump_json(data):
    """Stable serialization: sorted keys, two-space indent, trailing newline"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
