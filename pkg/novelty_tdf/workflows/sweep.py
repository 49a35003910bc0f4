from pathlib import Path
from typing import Optional

import pandas as pd
from joblib import Parallel, delayed

from novelty_tdf.config import GridConfig, RunConfig
from novelty_tdf.env import COLS_GRID
from novelty_tdf.evaluation import derive_labels
from novelty_tdf.runner import grid_configs, prepare_documents, run_grid_cell
from novelty_tdf.stream_utils import read_stream, save_table
from novelty_tdf.workflows.base import BaseWorkflow


class SweepWorkflow(BaseWorkflow):
    """Cross-validated detection cost for every cell of a parameter grid."""

    def __init__(
        self,
        fpath_stream: Path,
        fpath_out: Path,
        config: Optional[RunConfig] = None,
        grid: Optional[GridConfig] = None,
        **kwargs,
    ):
        super().__init__(name="sweep", **kwargs)
        self.fpath_stream = Path(fpath_stream)
        self.fpath_out = Path(fpath_out)
        self.config = config if config is not None else RunConfig()
        self.grid = grid if grid is not None else GridConfig()

    def run_main(self):
        self.check_inputs(self.fpath_stream, self.config.STOPWORDS)

        records = read_stream(self.fpath_stream, logger=self.logger)
        truth = derive_labels(
            [record.id for record in records],
            [record.cluster_id for record in records],
            mixed_clusters=self.config.MIXED_CLUSTERS,
            min_cluster_size=self.config.MIN_CLUSTER_SIZE,
        )
        stoplist = self.load_stoplist(self.config.STOPWORDS)
        docs, _ = prepare_documents(records, self.config.FIELD, stoplist)

        configs = grid_configs(self.config, self.grid)
        self.logger.info(
            f"Running {len(configs)} grid cells with n_jobs={self.grid.N_JOBS}"
        )
        rows = Parallel(n_jobs=self.grid.N_JOBS)(
            delayed(run_grid_cell)(docs, truth, config) for config in configs
        )

        df_grid = pd.DataFrame(rows, columns=COLS_GRID)
        self.logger.info(f"\nCost grid:\n{df_grid}")
        save_table(
            df_grid, self.fpath_out, sep=",", dry_run=self.dry_run, logger=self.logger
        )
        return df_grid
