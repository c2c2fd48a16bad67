"""
Runtime configuration for the bicirculant atlas.
"""

import logging
import os

from src.errors import InvalidParameter

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV_VAR = 'ATLAS_BUDGET'

DEFAULT_PROBE = 4096
PROBE_ENV_VAR = 'ATLAS_PROBE'

LOG_FORMAT = '%(levelname)s: %(message)s'


def _positive_int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidParameter(f"{name} must be a positive integer, got {raw!r}")
    if value <= 0:
        raise InvalidParameter(f"{name} must be a positive integer, got {raw!r}")
    return value


def get_default_budget() -> int:
    """Element budget for witness searches; ATLAS_BUDGET overrides the default only."""
    return _positive_int_from_env(BUDGET_ENV_VAR, DEFAULT_BUDGET)


def get_probe_size() -> int:
    """Number of random group elements tried before exhaustive enumeration."""
    return _positive_int_from_env(PROBE_ENV_VAR, DEFAULT_PROBE)


def configure_logging(level: int = logging.WARNING) -> None:
    """Install the root handler once; later calls only adjust the level."""
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=level, format=LOG_FORMAT)
    root.setLevel(level)
