"""Sequential stream scoring, timing benchmark and sweep-grid cells."""

import time
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from novelty_tdf.config import RunConfig
from novelty_tdf.env import (
    COL_ALPHA,
    COL_AVG_COST,
    COL_DECAY,
    COL_MEAN_US,
    COL_N,
    COL_N_DOCS,
    COL_P95_US,
    COL_SCHEME,
    COL_SCORER,
    COL_UPDATE_MEAN_US,
    COLS_BENCH,
    SCORER_AGG_CS,
    SCORER_MAX_CS,
    SCORER_MEAN_CS,
    SCORER_MIN_KL,
    SCORER_NS,
    SCORER_NS_T,
)
from novelty_tdf.evaluation import GroundTruth, evaluate_scores
from novelty_tdf.scorers import (
    ORIENTATIONS,
    ScoreRecord,
    agg_cs,
    max_cs,
    mean_cs,
    min_kl,
    ns,
    ns_t,
)
from novelty_tdf.stream_utils import StreamRecord, scores_to_dataframe, select_text
from novelty_tdf.tdf_index import TdfIndex
from novelty_tdf.text_pipeline import Document, build_document
from novelty_tdf.window_index import WindowIndex

SCHEME_LANGUAGE_MODEL = "lm"


class StreamScorer:
    """One scorer bound to its memory: a window of documents or a tDF index."""

    def __init__(self, config: RunConfig, tdf_index: Optional[TdfIndex] = None):
        self.config = config
        self.name = config.SCORER
        self.orientation = ORIENTATIONS[self.name]
        self.scheme = (
            config.weighting_scheme
            if self.name in (SCORER_NS, SCORER_NS_T)
            else config.baseline_scheme
        )
        self.scheme_name = (
            SCHEME_LANGUAGE_MODEL if self.name == SCORER_MIN_KL else self.scheme.smart
        )

        if self.name == SCORER_NS_T:
            if tdf_index is None:
                tdf_index = TdfIndex(config.decay_config)
            elif tdf_index.decay != config.decay_config:
                raise ValueError(
                    f"tDF index was built with {tdf_index.decay},"
                    f" run asks for {config.decay_config}"
                )
            self.memory = tdf_index
        else:
            if tdf_index is not None:
                raise ValueError(f"Scorer {self.name} does not use a tDF index")
            self.memory = WindowIndex(config.N)
        self._n_updates = 0

        score_functions: dict[str, Callable[[Document], float]] = {
            SCORER_NS: lambda doc: ns(doc, self.memory.live_stats(), self.scheme),
            SCORER_NS_T: lambda doc: ns_t(doc, self.memory, self.scheme),
            SCORER_MAX_CS: lambda doc: max_cs(doc, self.memory, self.scheme),
            SCORER_MEAN_CS: lambda doc: mean_cs(doc, self.memory, self.scheme),
            SCORER_AGG_CS: lambda doc: agg_cs(doc, self.memory, self.scheme),
            SCORER_MIN_KL: lambda doc: min_kl(
                doc,
                self.memory,
                smoothing=config.LAMBDA,
                empty_value=config.KL_EMPTY_WINDOW,
            ),
        }
        self.score = score_functions[self.name]

    @property
    def n_documents(self) -> int:
        return self.memory.n_documents

    def update(self, doc: Document):
        if isinstance(self.memory, TdfIndex):
            self.memory.observe(doc)
            self._n_updates += 1
            if self._n_updates % self.config.purge_every == 0:
                self.memory.purge()
        else:
            self.memory.push(doc)


@dataclass
class StreamRun:
    records: list[ScoreRecord]
    peak_documents: int
    scorer: StreamScorer
    n_zero_length: int = 0
    n_content_fallback: int = 0

    def to_dataframe(self) -> pd.DataFrame:
        return scores_to_dataframe(self.records)


def prepare_documents(
    records: Iterable[StreamRecord], text_field: str, stoplist
) -> tuple[list[Document], int]:
    """Build documents in stream order; position is the document timestamp."""
    docs = []
    n_fallback = 0
    for position, record in enumerate(records):
        text, fallback = select_text(record, text_field)
        n_fallback += fallback
        docs.append(build_document(record.id, position, text, stoplist))
    return docs, n_fallback


def score_documents(
    docs: Sequence[Document], config: RunConfig, tdf_index: Optional[TdfIndex] = None
) -> StreamRun:
    """Score each document against the memory, then add it to the memory."""
    scorer = StreamScorer(config, tdf_index=tdf_index)
    records = []
    peak_documents = scorer.n_documents
    for doc in docs:
        start = time.perf_counter_ns()
        score = scorer.score(doc)
        scored = time.perf_counter_ns()
        scorer.update(doc)
        updated = time.perf_counter_ns()

        peak_documents = max(peak_documents, scorer.n_documents)
        records.append(
            ScoreRecord(
                doc_id=doc.id,
                raw_score=float(score),
                orientation=scorer.orientation,
                scorer_name=scorer.name,
                scheme=scorer.scheme_name,
                N=config.N,
                elapsed_ns=(scored - start) if config.TIMING else 0,
                update_ns=(updated - scored) if config.TIMING else 0,
                zero_length=doc.zero_length,
            )
        )
    return StreamRun(
        records=records,
        peak_documents=peak_documents,
        scorer=scorer,
        n_zero_length=sum(record.zero_length for record in records),
    )


def run_stream(
    records: Iterable[StreamRecord],
    config: RunConfig,
    stoplist,
    tdf_index: Optional[TdfIndex] = None,
    logger=None,
) -> StreamRun:
    docs, n_fallback = prepare_documents(records, config.FIELD, stoplist)
    if n_fallback > 0:
        warnings.warn(
            f"{n_fallback} record(s) have no content; their text field was used instead",
            stacklevel=2,
        )
    stream_run = score_documents(docs, config, tdf_index=tdf_index)
    stream_run.n_content_fallback = n_fallback
    if logger is not None:
        logger.info(
            f"Scored {len(stream_run.records)} documents with {config.SCORER}"
            f" ({stream_run.scorer.scheme_name}, N={config.N});"
            f" {stream_run.n_zero_length} empty after preprocessing,"
            f" peak stored documents: {stream_run.peak_documents}"
        )
    return stream_run


def bench(
    docs: Sequence[Document],
    scorers: Sequence[str],
    windows: Sequence[int],
    repetitions: int = 3,
    base_config: Optional[RunConfig] = None,
    logger=None,
) -> pd.DataFrame:
    """Per-document scoring and update times, first pass discarded."""
    if repetitions < 1:
        raise ValueError(f"Need at least one timed repetition, got {repetitions}")
    if base_config is None:
        base_config = RunConfig()

    rows = []
    for scorer in scorers:
        for N in windows:
            config = base_config.model_copy(
                update={"SCORER": scorer, "N": N, "TIMING": True}
            )
            elapsed = []
            updates = []
            # first pass warms caches and the stemmer
            for i_pass in range(repetitions + 1):
                stream_run = score_documents(docs, config)
                if i_pass == 0:
                    continue
                elapsed.extend(record.elapsed_ns for record in stream_run.records)
                updates.extend(record.update_ns for record in stream_run.records)

            elapsed_us = np.asarray(elapsed, dtype=float) / 1e3
            row = {
                COL_SCORER: scorer,
                COL_N: N,
                COL_N_DOCS: len(docs),
                COL_MEAN_US: float(np.mean(elapsed_us)),
                COL_P95_US: float(np.percentile(elapsed_us, 95)),
                COL_UPDATE_MEAN_US: float(np.mean(updates) / 1e3),
            }
            if logger is not None:
                logger.debug(
                    f"{scorer} N={N}: {row[COL_MEAN_US]:.1f} us/doc"
                    f" (p95 {row[COL_P95_US]:.1f}), update {row[COL_UPDATE_MEAN_US]:.1f} us"
                )
            rows.append(row)
    return pd.DataFrame(rows, columns=COLS_BENCH)


def grid_configs(base_config: RunConfig, grid) -> list[RunConfig]:
    """Expand a GridConfig into run configs.

    Decay settings only multiply tDF cells. Baselines run once per window
    with the baseline scheme.
    """
    configs = []
    for scorer in grid.SCORERS:
        for N in grid.WINDOWS:
            if scorer in (SCORER_NS, SCORER_NS_T):
                schemes = grid.SCHEMES
            else:
                schemes = [base_config.SCHEME]
            for scheme in schemes:
                if scorer == SCORER_NS_T:
                    decays = [
                        (decay, alpha) for decay in grid.DECAYS for alpha in grid.ALPHAS
                    ]
                else:
                    decays = [(base_config.DECAY, base_config.ALPHA)]
                for decay, alpha in decays:
                    configs.append(
                        RunConfig(
                            **{
                                **base_config.model_dump(),
                                "SCORER": scorer,
                                "SCHEME": scheme,
                                "N": N,
                                "DECAY": decay,
                                "ALPHA": alpha,
                                "TIMING": False,
                            }
                        )
                    )
    return configs


def run_grid_cell(
    docs: Sequence[Document], truth: GroundTruth, config: RunConfig
) -> dict:
    """Score one configuration and return its cost-grid row."""
    stream_run = score_documents(docs, config)
    report = evaluate_scores(
        stream_run.to_dataframe(),
        truth,
        config=config.cost_config,
        folds=config.FOLDS,
        shuffle=config.SHUFFLE,
        seed=config.SEED,
        include_empty=config.INCLUDE_EMPTY,
        n_warmup=config.N if config.WARMUP == "exclude" else 0,
    )
    is_tdf = config.SCORER == SCORER_NS_T
    return {
        COL_SCORER: config.SCORER,
        COL_SCHEME: stream_run.scorer.scheme_name,
        COL_N: config.N,
        COL_DECAY: config.DECAY if is_tdf else "",
        COL_ALPHA: config.ALPHA if is_tdf else np.nan,
        COL_AVG_COST: report.cross_validation.avg_cost,
    }
