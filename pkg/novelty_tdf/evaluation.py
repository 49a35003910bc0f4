"""First-story labels, detection cost, DET curves and cross-validated costs."""

import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.stats import norm

from novelty_tdf.config import CostConfig
from novelty_tdf.env import (
    COL_DOC_ID,
    COL_P_FA,
    COL_P_MISS,
    COL_PROBIT_FA,
    COL_PROBIT_MISS,
    COL_RAW_SCORE,
    COL_SCORER,
    COL_THRESHOLD,
    COL_ZERO_LENGTH,
    COLS_DET,
    HIGHER_IS_NOVEL,
    LABEL_EXCLUDED,
    LABEL_NOT_NOVEL,
    LABEL_NOVEL,
    LOWER_IS_NOVEL,
    PROBIT_CLIP,
)
from novelty_tdf.exceptions import FoldTooSmall, NoNonTargets, NoTargets
from novelty_tdf.scorers import ORIENTATIONS

# cost differences below this are ties
COST_DECIMALS = 12


@dataclass
class GroundTruth:
    """Label per document id, in stream order."""

    labels: pd.Series
    cluster_ids: pd.Series

    @property
    def n_novel(self) -> int:
        return int((self.labels == LABEL_NOVEL).sum())


@dataclass(frozen=True)
class DetPoint:
    threshold: float
    p_miss: float
    p_fa: float
    probit_miss: float
    probit_fa: float


@dataclass
class SweepResult:
    points: list[DetPoint]
    threshold: float
    min_cost: float
    p_miss: float
    p_fa: float


@dataclass
class CrossValidationResult:
    avg_cost: float
    fold_costs: list[float]
    fold_thresholds: list[float]


@dataclass
class DetectionReport:
    """Everything ``evaluate`` produces for one scorer run."""

    scorer: str
    orientation: str
    n_targets: int
    n_non_targets: int
    sweep: SweepResult
    cross_validation: CrossValidationResult
    n_excluded: int = 0


def derive_labels(
    doc_ids: Sequence[str],
    cluster_ids: Sequence[Optional[str]],
    mixed_clusters: Iterable[str] = (),
    min_cluster_size: int = 1,
) -> GroundTruth:
    """First document of every cluster is novel, the rest are not.

    Documents without a cluster, in a mixed cluster, or in a cluster smaller
    than ``min_cluster_size`` are excluded from evaluation.
    """
    doc_ids = pd.Index(doc_ids, dtype=str)
    if doc_ids.has_duplicates:
        raise ValueError(
            f"Duplicate document ids: {doc_ids[doc_ids.duplicated()].unique().tolist()}"
        )
    clusters = pd.Series(list(cluster_ids), index=doc_ids, dtype=object)
    clusters = clusters.where(clusters.notna() & (clusters != ""), None)

    labels = pd.Series(LABEL_NOT_NOVEL, index=doc_ids, dtype=object)
    labels[~clusters.duplicated(keep="first")] = LABEL_NOVEL

    cluster_sizes = clusters.map(clusters.value_counts())
    excluded = (
        clusters.isna()
        | clusters.isin(set(mixed_clusters))
        | (cluster_sizes < min_cluster_size)
    )
    labels[excluded] = LABEL_EXCLUDED
    return GroundTruth(labels=labels, cluster_ids=clusters)


def detection_cost(p_miss, p_fa, config: Optional[CostConfig] = None):
    if config is None:
        config = CostConfig()
    return (
        config.c_miss * p_miss * config.p_target
        + config.c_fa * p_fa * (1 - config.p_target)
    )


def probit(p):
    """Inverse standard normal CDF, with p clipped away from 0 and 1."""
    clipped = np.clip(p, PROBIT_CLIP, 1 - PROBIT_CLIP)
    result = norm.ppf(clipped)
    return float(result) if np.ndim(result) == 0 else result


def _check_orientation(orientation: str):
    if orientation not in (HIGHER_IS_NOVEL, LOWER_IS_NOVEL):
        raise ValueError(f"Unknown orientation: {orientation}")


def error_rates(
    scores: np.ndarray, is_target: np.ndarray, thresholds, orientation: str
) -> tuple[np.ndarray, np.ndarray]:
    """Miss and false-alarm probabilities at each threshold.

    A document is flagged novel when its score is strictly above (or below,
    for lower_is_novel) the threshold.
    """
    _check_orientation(orientation)
    scores = np.asarray(scores, dtype=float)
    is_target = np.asarray(is_target, dtype=bool)
    thresholds = np.atleast_1d(np.asarray(thresholds, dtype=float))

    target_scores = np.sort(scores[is_target])
    non_target_scores = np.sort(scores[~is_target])
    if len(target_scores) == 0:
        raise NoTargets("No novel documents to evaluate")
    if len(non_target_scores) == 0:
        raise NoNonTargets("No non-novel documents to evaluate")

    def _n_flagged(sorted_scores):
        if orientation == HIGHER_IS_NOVEL:
            return len(sorted_scores) - np.searchsorted(
                sorted_scores, thresholds, side="right"
            )
        return np.searchsorted(sorted_scores, thresholds, side="left")

    p_miss = 1 - _n_flagged(target_scores) / len(target_scores)
    p_fa = _n_flagged(non_target_scores) / len(non_target_scores)
    return p_miss, p_fa


def candidate_thresholds(scores) -> np.ndarray:
    """-inf, midpoints between consecutive distinct scores, +inf."""
    distinct = np.unique(np.asarray(scores, dtype=float))
    midpoints = (distinct[:-1] + distinct[1:]) / 2
    return np.concatenate([[-np.inf], midpoints, [np.inf]])


def sweep(
    scores,
    is_target,
    orientation: str,
    config: Optional[CostConfig] = None,
) -> SweepResult:
    """Evaluate every candidate threshold and keep the cheapest.

    Ties on cost go to the lower miss probability, then the lower threshold.
    """
    thresholds = candidate_thresholds(scores)
    p_miss, p_fa = error_rates(scores, is_target, thresholds, orientation)
    costs = detection_cost(p_miss, p_fa, config)

    # np.lexsort: last key is the primary one
    order = np.lexsort((thresholds, p_miss, np.round(costs, COST_DECIMALS)))
    i_best = order[0]

    probits_miss = probit(p_miss)
    probits_fa = probit(p_fa)
    points = [
        DetPoint(
            threshold=float(thresholds[i]),
            p_miss=float(p_miss[i]),
            p_fa=float(p_fa[i]),
            probit_miss=float(probits_miss[i]),
            probit_fa=float(probits_fa[i]),
        )
        for i in range(len(thresholds))
    ]
    return SweepResult(
        points=points,
        threshold=float(thresholds[i_best]),
        min_cost=float(costs[i_best]),
        p_miss=float(p_miss[i_best]),
        p_fa=float(p_fa[i_best]),
    )


def cross_validate(
    scores,
    is_target,
    orientation: str,
    k: int = 5,
    config: Optional[CostConfig] = None,
    shuffle: bool = False,
    seed: Optional[int] = None,
) -> CrossValidationResult:
    """Pick the threshold on k-1 folds, measure cost on the held-out fold.

    Folds are contiguous blocks of the stream unless ``shuffle`` is set.
    """
    if k < 2:
        raise ValueError(f"Need at least 2 folds, got {k}")
    scores = np.asarray(scores, dtype=float)
    is_target = np.asarray(is_target, dtype=bool)
    if len(scores) < k:
        raise FoldTooSmall(f"Cannot split {len(scores)} documents into {k} folds")

    indices = np.arange(len(scores))
    if shuffle:
        rng = np.random.default_rng(seed=seed)
        indices = rng.permutation(indices)
    folds = np.array_split(indices, k)

    fold_costs = []
    fold_thresholds = []
    for i_fold, test in enumerate(folds):
        train = np.concatenate([fold for j, fold in enumerate(folds) if j != i_fold])
        try:
            threshold = sweep(
                scores[train], is_target[train], orientation, config
            ).threshold
            p_miss, p_fa = error_rates(
                scores[test], is_target[test], [threshold], orientation
            )
        except (NoTargets, NoNonTargets) as exception:
            raise FoldTooSmall(
                f"Fold {i_fold + 1}/{k} cannot be evaluated: {exception}"
            ) from exception
        fold_costs.append(float(detection_cost(p_miss[0], p_fa[0], config)))
        fold_thresholds.append(threshold)

    return CrossValidationResult(
        avg_cost=float(np.mean(fold_costs)),
        fold_costs=fold_costs,
        fold_thresholds=fold_thresholds,
    )


def select_evaluation_records(
    df_scores: pd.DataFrame,
    truth: GroundTruth,
    include_empty: bool = False,
    n_warmup: int = 0,
    logger=None,
) -> pd.DataFrame:
    """Drop excluded, unlabelled, warm-up and (optionally) empty documents.

    Returns the remaining score rows with a boolean ``is_target`` column.
    """
    df_scores = df_scores.reset_index(drop=True)
    keep = pd.Series(True, index=df_scores.index)

    labels = df_scores[COL_DOC_ID].map(truth.labels)
    n_unlabelled = int(labels.isna().sum())
    if n_unlabelled > 0:
        warnings.warn(
            f"{n_unlabelled} scored documents have no ground-truth label and are ignored",
            stacklevel=2,
        )
    keep &= labels.notna() & (labels != LABEL_EXCLUDED)

    if not include_empty and COL_ZERO_LENGTH in df_scores.columns:
        keep &= ~df_scores[COL_ZERO_LENGTH].astype(bool)
    if n_warmup > 0:
        keep &= df_scores.index >= n_warmup

    if logger is not None:
        logger.info(
            f"Keeping {int(keep.sum())} of {len(df_scores)} scored documents for evaluation"
        )
    df_selected = df_scores.loc[keep].copy()
    df_selected["is_target"] = labels.loc[keep] == LABEL_NOVEL
    return df_selected


def evaluate_scores(
    df_scores: pd.DataFrame,
    truth: GroundTruth,
    config: Optional[CostConfig] = None,
    folds: int = 5,
    shuffle: bool = False,
    seed: Optional[int] = None,
    include_empty: bool = False,
    n_warmup: int = 0,
    logger=None,
) -> DetectionReport:
    """Sweep and cross-validate the scores of a single scorer."""
    scorers = df_scores[COL_SCORER].unique()
    if len(scorers) != 1:
        raise ValueError(f"Expected scores from exactly one scorer, got {list(scorers)}")
    scorer = str(scorers[0])
    orientation = ORIENTATIONS[scorer]

    df_selected = select_evaluation_records(
        df_scores, truth, include_empty=include_empty, n_warmup=n_warmup, logger=logger
    )
    scores = df_selected[COL_RAW_SCORE].astype(float).to_numpy()
    is_target = df_selected["is_target"].to_numpy(dtype=bool)

    sweep_result = sweep(scores, is_target, orientation, config)
    cv_result = cross_validate(
        scores, is_target, orientation, k=folds, config=config, shuffle=shuffle, seed=seed
    )
    return DetectionReport(
        scorer=scorer,
        orientation=orientation,
        n_targets=int(is_target.sum()),
        n_non_targets=int((~is_target).sum()),
        sweep=sweep_result,
        cross_validation=cv_result,
        n_excluded=len(df_scores) - len(df_selected),
    )


def det_to_dataframe(points: Sequence[DetPoint]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            COL_THRESHOLD: [point.threshold for point in points],
            COL_P_MISS: [point.p_miss for point in points],
            COL_P_FA: [point.p_fa for point in points],
            COL_PROBIT_MISS: [point.probit_miss for point in points],
            COL_PROBIT_FA: [point.probit_fa for point in points],
        },
        columns=COLS_DET,
    )
