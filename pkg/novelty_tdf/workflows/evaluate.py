from pathlib import Path
from typing import Optional

import pandas as pd

from novelty_tdf.config import RunConfig
from novelty_tdf.env import (
    COL_AVG_COST,
    COL_FOLD_COSTS,
    COL_MIN_COST,
    COL_MIN_THRESHOLD,
    COL_N,
    COL_SCHEME,
    COL_SCORER,
    DEFAULT_FNAME_COSTS,
    DEFAULT_FNAME_DET,
)
from novelty_tdf.evaluation import derive_labels, det_to_dataframe, evaluate_scores
from novelty_tdf.stream_utils import load_scores, read_stream, save_table
from novelty_tdf.workflows.base import BaseWorkflow


class EvaluateWorkflow(BaseWorkflow):
    """Detection costs and DET curves for a score file against stream clusters."""

    def __init__(
        self,
        fpath_scores: Path,
        fpath_stream: Path,
        dpath_out: Path,
        config: Optional[RunConfig] = None,
        **kwargs,
    ):
        super().__init__(name="evaluate", **kwargs)
        self.fpath_scores = Path(fpath_scores)
        self.fpath_stream = Path(fpath_stream)
        self.dpath_out = Path(dpath_out)
        self.config = config if config is not None else RunConfig()

    def run_main(self):
        self.check_inputs(self.fpath_scores, self.fpath_stream)

        df_scores = load_scores(self.fpath_scores)
        records = read_stream(self.fpath_stream, logger=self.logger)
        truth = derive_labels(
            [record.id for record in records],
            [record.cluster_id for record in records],
            mixed_clusters=self.config.MIXED_CLUSTERS,
            min_cluster_size=self.config.MIN_CLUSTER_SIZE,
        )
        self.logger.info(
            f"Ground truth: {truth.n_novel} novel documents"
            f" in {truth.cluster_ids.nunique()} clusters"
        )

        groups = list(df_scores.groupby([COL_SCORER, COL_SCHEME, COL_N], sort=False))
        cost_rows = []
        for (scorer, scheme, N), df_group in groups:
            report = evaluate_scores(
                df_group,
                truth,
                config=self.config.cost_config,
                folds=self.config.FOLDS,
                shuffle=self.config.SHUFFLE,
                seed=self.config.SEED,
                include_empty=self.config.INCLUDE_EMPTY,
                n_warmup=int(N) if self.config.WARMUP == "exclude" else 0,
                logger=self.logger,
            )
            self.logger.info(
                f"{scorer} ({scheme}, N={N}):"
                f" minC_Det={report.sweep.min_cost:.4f}"
                f" at threshold {report.sweep.threshold:.6g},"
                f" avgC_Det={report.cross_validation.avg_cost:.4f}"
            )

            if len(groups) == 1:
                fpath_det = self.dpath_out / DEFAULT_FNAME_DET
            else:
                fpath_det = self.dpath_out / f"det_{scorer}_{scheme}_N{N}.tsv"
            save_table(
                det_to_dataframe(report.sweep.points),
                fpath_det,
                dry_run=self.dry_run,
                logger=self.logger,
            )

            cost_rows.append(
                {
                    COL_SCORER: scorer,
                    COL_SCHEME: scheme,
                    COL_N: N,
                    COL_MIN_COST: report.sweep.min_cost,
                    COL_MIN_THRESHOLD: report.sweep.threshold,
                    COL_AVG_COST: report.cross_validation.avg_cost,
                    COL_FOLD_COSTS: ",".join(
                        f"{cost:.6g}" for cost in report.cross_validation.fold_costs
                    ),
                }
            )

        df_costs = pd.DataFrame(cost_rows)
        save_table(
            df_costs,
            self.dpath_out / DEFAULT_FNAME_COSTS,
            dry_run=self.dry_run,
            logger=self.logger,
        )
        return df_costs
