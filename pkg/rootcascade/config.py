from functools import lru_cache
from typing import Literal

from pydantic_settings import BaseSettings


class CascadeSettings(BaseSettings):
    """
    Environment-driven settings shared by the library and the command line.
    Uses Pydantic's BaseSettings, so each field can be overridden by an
    environment variable of the same name.

    """

    ROOTCASCADE_DIMENSION_BOUND: int = 200
    """
    Largest irreducible module (by Weyl dimension) that build_irrep will
    construct. Requests above the bound are rejected with the required size.
    """

    ROOTCASCADE_LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    """
    Verbosity of the package logger. Applied by configure_logging at import
    and again each time the CLI starts.
    """

    ROOTCASCADE_DEFAULT_SEED: int = 0
    """
    Seed used by randomized checks when the caller does not pass one.
    """


@lru_cache(maxsize=1)
def get_settings() -> CascadeSettings:
    return CascadeSettings()
