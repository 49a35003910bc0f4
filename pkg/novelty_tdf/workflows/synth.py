from pathlib import Path
from typing import Optional

from novelty_tdf.env import DEFAULT_SEED
from novelty_tdf.stream_utils import write_stream
from novelty_tdf.synthetic import SyntheticParams, generate_synthetic
from novelty_tdf.workflows.base import BaseWorkflow


class SynthWorkflow(BaseWorkflow):
    """Write a labelled synthetic stream as JSON lines."""

    def __init__(
        self,
        fpath_out: Path,
        seed: int = DEFAULT_SEED,
        params: Optional[SyntheticParams] = None,
        **kwargs,
    ):
        super().__init__(name="synth", **kwargs)
        self.fpath_out = Path(fpath_out)
        self.seed = seed
        self.params = params if params is not None else SyntheticParams()

    def run_main(self):
        records = generate_synthetic(self.seed, self.params)
        n_clusters = len({record.cluster_id for record in records})
        self.logger.info(
            f"Generated {len(records)} documents in {n_clusters} clusters"
            f" (seed={self.seed})"
        )
        if self.dry_run:
            self.logger.info(f"[dry run] Would write stream to {self.fpath_out}")
        else:
            write_stream(records, self.fpath_out)
            self.logger.info(f"Wrote stream to {self.fpath_out}")
        return records
