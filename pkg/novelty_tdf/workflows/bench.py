from pathlib import Path
from typing import Optional, Sequence

from novelty_tdf.config import RunConfig
from novelty_tdf.env import DEFAULT_WINDOW_GRID, SCORER_MEAN_CS, SCORER_NS
from novelty_tdf.runner import bench, prepare_documents
from novelty_tdf.stream_utils import read_stream, save_table
from novelty_tdf.synthetic import SyntheticParams, generate_synthetic
from novelty_tdf.workflows.base import BaseWorkflow

# roughly the length of full article bodies
CONTENT_LENGTH_PARAMS = SyntheticParams(
    n_clusters=400,
    mean_cluster_size=5.0,
    topic_vocab_size=300,
    background_vocab_size=2000,
    background_fraction=0.5,
    mean_length=380.0,
    length_sigma=0.3,
    overlap=2.0,
)


class BenchWorkflow(BaseWorkflow):
    """Scoring time per document across window sizes."""

    def __init__(
        self,
        fpath_out: Path,
        fpath_stream: Optional[Path] = None,
        scorers: Sequence[str] = (SCORER_NS, SCORER_MEAN_CS),
        windows: Sequence[int] = DEFAULT_WINDOW_GRID,
        repetitions: int = 3,
        n_docs: Optional[int] = None,
        config: Optional[RunConfig] = None,
        **kwargs,
    ):
        super().__init__(name="bench", **kwargs)
        self.fpath_out = Path(fpath_out)
        self.fpath_stream = fpath_stream
        self.scorers = list(scorers)
        self.windows = list(windows)
        self.repetitions = repetitions
        self.n_docs = n_docs
        self.config = config if config is not None else RunConfig()

    def run_main(self):
        if self.fpath_stream is not None:
            self.check_inputs(self.fpath_stream)
            records = read_stream(self.fpath_stream, logger=self.logger)
        else:
            self.logger.info("No stream given: using a synthetic content-length stream")
            records = generate_synthetic(self.config.SEED, CONTENT_LENGTH_PARAMS)
        if self.n_docs is not None:
            records = records[: self.n_docs]

        stoplist = self.load_stoplist(self.config.STOPWORDS)
        docs, _ = prepare_documents(records, self.config.FIELD, stoplist)
        self.logger.info(
            f"Benchmarking {self.scorers} on {len(docs)} documents"
            f" for N in {self.windows} ({self.repetitions} timed passes)"
        )
        df_bench = bench(
            docs,
            self.scorers,
            self.windows,
            repetitions=self.repetitions,
            base_config=self.config,
            logger=self.logger,
        )
        self.logger.info(f"\nTimings (microseconds per document):\n{df_bench}")
        save_table(df_bench, self.fpath_out, dry_run=self.dry_run, logger=self.logger)
        return df_bench
