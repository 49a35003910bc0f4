"""Base class for the subcommand workflows."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from novelty_tdf.logger import get_logger
from novelty_tdf.text_pipeline import load_stoplist


class BaseWorkflow(ABC):
    """Shared run loop: init, main, cleanup, with logging and a dry-run switch."""

    def __init__(
        self,
        name: str,
        logger: Optional[logging.Logger] = None,
        dry_run: bool = False,
    ):
        self.name = name
        self.dry_run = dry_run
        if logger is None:
            logger = get_logger(f"novelty_tdf.{name}")
        self.logger = logger

    def load_stoplist(self, fpath_stopwords: Optional[Path]):
        stoplist = load_stoplist(fpath_stopwords)
        source = fpath_stopwords if fpath_stopwords is not None else "bundled list"
        self.logger.debug(f"Loaded {len(stoplist)} stopwords from {source}")
        return stoplist

    def check_inputs(self, *fpaths: Optional[Path]):
        for fpath in fpaths:
            if fpath is not None and not Path(fpath).exists():
                raise FileNotFoundError(f"File {fpath} does not exist")

    def run_init(self):
        self.logger.info(f"========== BEGIN {self.name.upper()} ==========")
        if self.dry_run:
            self.logger.info("Doing a dry run: no output file will be written")

    @abstractmethod
    def run_main(self):
        """Do the work."""

    def run_cleanup(self):
        self.logger.info(f"========== END {self.name.upper()} ==========")

    def run(self):
        self.run_init()
        result = self.run_main()
        self.run_cleanup()
        return result
