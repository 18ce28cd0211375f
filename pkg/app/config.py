# app/config.py
"""
Runtime configuration
---------------------
- Values come from ODDKH_* environment variables (a local .env is honoured)
- CLI flags override whatever is configured here
- configure_logging() installs the single stderr sink used by the whole app
"""

import sys
from typing import Literal

from dotenv import load_dotenv
from loguru import logger
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ODDKH_", extra="ignore")

    threads: int = 1
    max_crossings: int = 20
    log_level: str = "WARNING"
    coefficients: str = "Z"
    # which interleaved single-circle square counts as X
    xy_rule: Literal["ccw", "cw"] = "ccw"
    # verify every Smith normal form by multiplication (slow; tests only)
    check_snf: bool = False


settings = Settings()


def configure_logging(level: str | None = None) -> None:
    """Route loguru output to stderr at the requested level."""
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or settings.log_level).upper(),
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | {name}:{line} - {message}",
    )
