from pathlib import Path
from typing import Optional

from novelty_tdf.config import RunConfig
from novelty_tdf.env import SCORER_NS_T
from novelty_tdf.runner import run_stream
from novelty_tdf.stream_utils import read_stream, save_table
from novelty_tdf.tdf_index import TdfIndex
from novelty_tdf.workflows.base import BaseWorkflow


class ScoreWorkflow(BaseWorkflow):
    """Score every document of a JSON-lines stream."""

    def __init__(
        self,
        fpath_stream: Path,
        fpath_out: Path,
        config: Optional[RunConfig] = None,
        fpath_tdf_in: Optional[Path] = None,
        fpath_tdf_out: Optional[Path] = None,
        **kwargs,
    ):
        super().__init__(name="score", **kwargs)
        self.fpath_stream = Path(fpath_stream)
        self.fpath_out = Path(fpath_out)
        self.config = config if config is not None else RunConfig()
        self.fpath_tdf_in = fpath_tdf_in
        self.fpath_tdf_out = fpath_tdf_out

        if (fpath_tdf_in or fpath_tdf_out) and self.config.SCORER != SCORER_NS_T:
            raise ValueError(
                f"tDF snapshots only apply to scorer {SCORER_NS_T},"
                f" got {self.config.SCORER}"
            )

    def run_main(self):
        self.check_inputs(self.fpath_stream, self.fpath_tdf_in, self.config.STOPWORDS)
        self.logger.debug(f"Run config: {self.config.model_dump()}")

        records = read_stream(self.fpath_stream, logger=self.logger)
        stoplist = self.load_stoplist(self.config.STOPWORDS)

        tdf_index = None
        if self.fpath_tdf_in is not None:
            tdf_index = TdfIndex.load(self.fpath_tdf_in, decay=self.config.decay_config)
            self.logger.info(
                f"Resuming from tDF snapshot {self.fpath_tdf_in}"
                f" ({len(tdf_index)} terms, now={tdf_index.now})"
            )

        stream_run = run_stream(
            records, self.config, stoplist, tdf_index=tdf_index, logger=self.logger
        )
        df_scores = stream_run.to_dataframe()
        self.logger.debug(f"\nScores:\n{df_scores}")
        save_table(df_scores, self.fpath_out, dry_run=self.dry_run, logger=self.logger)

        if self.fpath_tdf_out is not None:
            if self.dry_run:
                self.logger.info(f"[dry run] Would write tDF snapshot to {self.fpath_tdf_out}")
            else:
                stream_run.scorer.memory.save(self.fpath_tdf_out)
                self.logger.info(f"Wrote tDF snapshot to {self.fpath_tdf_out}")
        return stream_run
