"""
Package logger.

Records are JSON encoded and go to stderr, so JSON results on stdout stay
byte-stable. The verbosity comes from `ROOTCASCADE_LOG_LEVEL` through
CascadeSettings.

"""

import logging
from contextlib import contextmanager
from json import dumps as json_dumps
from logging import Formatter, Handler, Logger, LogRecord, getLogger
from time import monotonic_ns
from typing import Iterator

from click import secho
from pydantic import ValidationError
from rich.console import Console

from rootcascade.config import CascadeSettings, get_settings

LEVEL_COLORS: dict[int, str] = {
    logging.WARNING: "yellow",
    logging.ERROR: "red",
    logging.CRITICAL: "red",
}

# Attributes that log_time_duration and the verifiers attach through `extra`
STRUCTURED_FIELDS = ("root_system", "duration_seconds")


class JsonFormatter(Formatter):
    def format(self, record: LogRecord) -> str:
        log_record: dict[str, object] = {
            "level": record.levelname,
            "name": record.name,
            "timestamp": self.formatTime(record, self.datefmt),
            "message": record.getMessage(),
        }
        for field in STRUCTURED_FIELDS:
            value = getattr(record, field, None)
            if value is not None:
                log_record[field] = value
        if record.exc_info:
            log_record["exception"] = self.formatException(record.exc_info)
        return json_dumps(log_record)


class StderrColorHandler(Handler):
    def emit(self, record: LogRecord):
        try:
            secho(self.format(record), fg=LEVEL_COLORS.get(record.levelno), err=True)
        except Exception:
            self.handleError(record)


def setup_logger(name: str) -> Logger:
    """
    Attach the JSON stderr handler once. The level is left to
    configure_logging so the CLI can re-read it after the environment changes.

    """
    logger = getLogger(name)
    if not any(isinstance(handler, StderrColorHandler) for handler in logger.handlers):
        handler = StderrColorHandler()
        handler.setFormatter(JsonFormatter())
        logger.addHandler(handler)
    return logger


def configure_logging(settings: CascadeSettings | None = None) -> Logger:
    settings = settings or get_settings()
    LOGGER.setLevel(settings.ROOTCASCADE_LOG_LEVEL)
    return LOGGER


@contextmanager
def log_time_duration(message: str, root_system: str | None = None) -> Iterator[None]:
    """
    Time a block and log it at DEBUG with its duration as a structured field.

    ```python {{sticky: True}}
    with log_time_duration("invariant kernel, degree 4", root_system="B2"):
        weight_spectrum(root_system, cascade, max_degree=4)
    ```

    """
    start = monotonic_ns()
    yield
    elapsed = (monotonic_ns() - start) / 1e9
    LOGGER.debug(
        f"{message} : Took {elapsed:.2f}s",
        extra={"root_system": root_system, "duration_seconds": round(elapsed, 3)},
    )


LOGGER = setup_logger(__name__)
LOGGER.setLevel(logging.WARNING)
try:
    configure_logging()
except ValidationError as exc:
    # The CLI turns this into a usage error; library imports keep the default level
    LOGGER.warning(f"Ignoring invalid ROOTCASCADE_* settings: {exc.errors()[0]['msg']}")

CONSOLE = Console()
