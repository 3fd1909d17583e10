import logging
import os
from pathlib import Path

from dotenv import load_dotenv

from utilities.errors import SCHEMA_VERSION


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        raise RuntimeError(f"{name} must be an integer, got {value!r}.")


# Load the main .env first (to get ENV_FILE)
load_dotenv()

# If ENV_FILE exists, load that specific file too
env_file = os.getenv("ENV_FILE")
if env_file:
    load_dotenv(env_file)

# Application version, keep in sync with CHANGELOG.md.
APP_VERSION = "1.0.1"

BASE_DIR = Path(__file__).resolve().parent


class Config:
    APP_VERSION = APP_VERSION
    SCHEMA_VERSION = SCHEMA_VERSION
    DEBUG = False
    TESTING = False

    # Penalty for pairs tied in exactly one ranking. The CLI reads
    # RANKDRIFT_PENALTY through click, and `--penalty` wins over both.
    DEFAULT_PENALTY = 0.5

    LOG_LEVEL = getattr(logging, os.getenv("RANKDRIFT_LOG_LEVEL", "WARNING").upper(), logging.WARNING)
    LOG_FILE = os.getenv("RANKDRIFT_LOG_FILE") or None

    # Seasons (and race files within a season) are loaded on a thread pool.
    MAX_WORKERS = max(1, _env_int("RANKDRIFT_MAX_WORKERS", 4))

    # A season whose NS differs from the published value by more than this
    # is flagged in the report, never failed.
    NS_FLAG_TOLERANCE = 0.05
    VARIANCE_RATIO_LIMIT = 4.0
    ALPHA = 0.05

    DATA_DIR = Path(os.getenv("RANKDRIFT_DATA_DIR", str(BASE_DIR / "data")))
    # Long-format series,year,ns files behind the `published_ns` column.
    PUBLISHED_NS_FILES = ("published/table5_ns.csv", "published/table6_ns.csv")


class DevelopmentConfig(Config):
    DEBUG = True


class TestingConfig(Config):
    TESTING = True
    MAX_WORKERS = 2


def get_config(env=None):
    env = env or os.getenv("ENV", "development").lower()

    if env == "testing":
        return TestingConfig
    return DevelopmentConfig
