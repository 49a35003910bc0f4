"""Logger setup: rich console output, optional log file, captured warnings."""

import logging
from pathlib import Path

from rich.logging import RichHandler

DEFAULT_LOGGER_NAME = "novelty_tdf"
FORMAT_RICH = "%(message)s"
FORMAT_FILE = "%(asctime)s %(levelname)-7s %(name)s %(message)s"
DATE_FORMAT = "[%Y-%m-%d %X]"

VERBOSITY_TO_LOG_LEVEL_MAP = {
    0: logging.ERROR,
    1: logging.WARNING,
    2: logging.INFO,
    3: logging.DEBUG,
}


def get_logger(name: str = DEFAULT_LOGGER_NAME, level=logging.INFO) -> logging.Logger:
    """Create or fetch a logger that prints through rich."""
    logger = logging.getLogger(name)
    logger.setLevel(level)
    if not any(isinstance(handler, RichHandler) for handler in logger.handlers):
        handler = RichHandler(
            show_time=False, markup=False, rich_tracebacks=True, show_path=False
        )
        handler.setFormatter(logging.Formatter(FORMAT_RICH, datefmt=DATE_FORMAT))
        logger.addHandler(handler)
    logger.propagate = False
    return logger


def add_logfile(logger: logging.Logger, fpath_log: Path | str) -> None:
    """Also write the logger's records to a file."""
    fpath_log = Path(fpath_log)
    fpath_log.parent.mkdir(parents=True, exist_ok=True)
    file_handler = logging.FileHandler(fpath_log)
    file_handler.setFormatter(logging.Formatter(FORMAT_FILE, datefmt=DATE_FORMAT))
    logger.addHandler(file_handler)
    logger.info(f"Writing the log to {fpath_log}")


def capture_warnings(logger: logging.Logger) -> logging.Logger:
    """Send warnings.warn output to the same handlers as logger."""
    logging.captureWarnings(True)
    logger_warnings = logging.getLogger("py.warnings")
    for handler in logger.handlers:
        if handler not in logger_warnings.handlers:
            logger_warnings.addHandler(handler)
    logger_warnings.propagate = False
    return logger_warnings
