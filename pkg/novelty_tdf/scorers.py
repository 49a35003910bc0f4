"""Novelty scorers: IDF aggregation (window and tDF) and the similarity baselines."""

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union

from novelty_tdf.config import WeightingScheme
from novelty_tdf.env import (
    DEFAULT_KL_EMPTY_WINDOW,
    DEFAULT_LAMBDA,
    HIGHER_IS_NOVEL,
    LOWER_IS_NOVEL,
    SCORER_AGG_CS,
    SCORER_MAX_CS,
    SCORER_MEAN_CS,
    SCORER_MIN_KL,
    SCORER_NS,
    SCORER_NS_T,
)
from novelty_tdf.exceptions import EmptyModel, ZeroProbability
from novelty_tdf.tdf_index import TdfIndex
from novelty_tdf.text_pipeline import Document
from novelty_tdf.weighting import (
    CollectionStats,
    idf_component,
    norm_component,
    tf_component,
)
from novelty_tdf.window_index import WindowIndex

ORIENTATIONS = {
    SCORER_NS: HIGHER_IS_NOVEL,
    SCORER_NS_T: HIGHER_IS_NOVEL,
    SCORER_MIN_KL: HIGHER_IS_NOVEL,
    SCORER_MAX_CS: LOWER_IS_NOVEL,
    SCORER_MEAN_CS: LOWER_IS_NOVEL,
    SCORER_AGG_CS: LOWER_IS_NOVEL,
}


@dataclass(frozen=True)
class ScoreRecord:
    doc_id: str
    raw_score: float
    orientation: str
    scorer_name: str
    scheme: str
    N: int
    elapsed_ns: int = 0  # scoring only
    update_ns: int = 0  # index update only
    zero_length: bool = False


def is_novel(record: ScoreRecord, threshold: float) -> bool:
    """Strict comparison in both orientations; ties are not novel."""
    if record.orientation == HIGHER_IS_NOVEL:
        return record.raw_score > threshold
    if record.orientation == LOWER_IS_NOVEL:
        return record.raw_score < threshold
    raise ValueError(f"Unknown orientation: {record.orientation}")


# ---------- cosine family ----------


def document_weights(
    doc: Document, stats: CollectionStats, scheme: WeightingScheme
) -> dict[str, float]:
    """tf x idf weight of every term of doc against stats."""
    return {
        term: tf_component(scheme, count, doc.dl, stats.avdl)
        * idf_component(scheme, stats.get_df(term), stats.N)
        for term, count in doc.tf.items()
    }


def _l2(weights: Mapping[str, float]) -> float:
    return math.sqrt(sum(weight * weight for weight in weights.values()))


def cosine(weights_a: Mapping[str, float], weights_b: Mapping[str, float]) -> float:
    """Cosine similarity of two sparse vectors; 0 if either is all-zero."""
    if len(weights_a) > len(weights_b):
        weights_a, weights_b = weights_b, weights_a
    dot = sum(
        weight * weights_b[term] for term, weight in weights_a.items() if term in weights_b
    )
    norms = _l2(weights_a) * _l2(weights_b)
    if norms == 0:
        return 0.0
    return dot / norms


def _similarities(
    doc: Document, window: WindowIndex, scheme: WeightingScheme
) -> list[float]:
    stats = window.live_stats()
    weights = document_weights(doc, stats, scheme)
    return [
        cosine(weights, document_weights(other, stats, scheme)) for other in window
    ]


def max_cs(doc: Document, window: WindowIndex, scheme: WeightingScheme) -> float:
    similarities = _similarities(doc, window, scheme)
    return max(similarities) if similarities else 0.0


def mean_cs(doc: Document, window: WindowIndex, scheme: WeightingScheme) -> float:
    similarities = _similarities(doc, window, scheme)
    return sum(similarities) / len(similarities) if similarities else 0.0


def agg_cs(doc: Document, window: WindowIndex, scheme: WeightingScheme) -> float:
    """Cosine against the concatenation of all window documents."""
    if len(window) == 0:
        return 0.0
    stats = window.live_stats()
    return cosine(
        document_weights(doc, stats, scheme),
        document_weights(window.summary_document(), stats, scheme),
    )


# ---------- language models ----------


class LanguageModel:
    """Unigram model of a document smoothed against corpus counts.

    theta(q) = lambda * tf_d(q) / dl_d + (1 - lambda) * c(q) / |C|

    An empty document gives the corpus distribution, an empty corpus gives
    the document distribution.
    """

    def __init__(
        self,
        doc_tf: Mapping[str, int],
        corpus_tf: Mapping[str, int],
        smoothing: float = DEFAULT_LAMBDA,
        corpus_total: Optional[int] = None,
    ):
        if not 0 <= smoothing <= 1:
            raise ValueError(f"Smoothing must be in [0, 1], got {smoothing}")
        self.doc_tf = doc_tf
        self.corpus_tf = corpus_tf
        self.smoothing = smoothing
        self.dl = sum(doc_tf.values())
        if corpus_total is None:
            corpus_total = sum(corpus_tf.values())
        self.corpus_total = corpus_total
        if self.dl == 0 and self.corpus_total == 0:
            raise EmptyModel("Cannot build a language model without any counts")

        if self.dl == 0:
            self._weight_doc = 0.0
        elif self.corpus_total == 0:
            self._weight_doc = 1.0
        else:
            self._weight_doc = smoothing

    def prob(self, term: str) -> float:
        p = 0.0
        if self._weight_doc > 0:
            p += self._weight_doc * self.doc_tf.get(term, 0) / self.dl
        if self._weight_doc < 1:
            p += (1 - self._weight_doc) * self.corpus_tf.get(term, 0) / self.corpus_total
        return p

    def __getitem__(self, term: str) -> float:
        return self.prob(term)

    @cached_property
    def probs(self) -> dict[str, float]:
        vocabulary = set(self.doc_tf) | set(self.corpus_tf)
        return {term: self.prob(term) for term in sorted(vocabulary)}

    @property
    def support(self) -> Iterable[str]:
        return self.doc_tf.keys()


ProbabilityMap = Union[LanguageModel, Mapping[str, float]]


def build_lm(
    doc: Document,
    corpus_tf: Mapping[str, int],
    smoothing: float = DEFAULT_LAMBDA,
    corpus_total: Optional[int] = None,
) -> LanguageModel:
    return LanguageModel(doc.tf, corpus_tf, smoothing=smoothing, corpus_total=corpus_total)


def kl_div(
    theta_d: ProbabilityMap,
    theta_ref: ProbabilityMap,
    support: Optional[Iterable[str]] = None,
) -> float:
    """KL divergence summed over the terms of d only.

    ``support`` defaults to the document terms of a LanguageModel, or to the
    keys of a plain mapping.
    """
    if support is None:
        support = theta_d.support if isinstance(theta_d, LanguageModel) else theta_d.keys()

    total = 0.0
    for term in support:
        p = theta_d[term] if isinstance(theta_d, LanguageModel) else theta_d.get(term, 0.0)
        if p == 0:
            continue
        q = theta_ref[term] if isinstance(theta_ref, LanguageModel) else theta_ref.get(term, 0.0)
        if q == 0:
            raise ZeroProbability(f"Reference model gives zero probability to {term!r}")
        total += p * math.log(p / q)
    return total


def min_kl(
    doc: Document,
    window: WindowIndex,
    smoothing: float = DEFAULT_LAMBDA,
    empty_value: float = DEFAULT_KL_EMPTY_WINDOW,
) -> float:
    """Smallest divergence from doc to any window document.

    The smoothing corpus is the window plus doc itself. Empty documents
    score 0.
    """
    if len(window) == 0:
        return empty_value
    if doc.zero_length:
        return 0.0
    corpus_tf = Counter(window.summary_tf)
    corpus_tf.update(doc.tf)
    corpus_total = window.sum_dl + doc.dl
    model_doc = build_lm(doc, corpus_tf, smoothing, corpus_total)
    return min(
        kl_div(model_doc, build_lm(other, corpus_tf, smoothing, corpus_total))
        for other in window
    )


# ---------- IDF aggregation ----------


def ns(doc: Document, stats: CollectionStats, scheme: WeightingScheme) -> float:
    """Length-normalized sum of tf x idf over the distinct terms of doc.

    O(|doc|) lookups whatever the window size. Empty documents score 0.
    """
    if doc.zero_length:
        return 0.0
    total = sum(
        tf_component(scheme, count, doc.dl, stats.avdl)
        * idf_component(scheme, stats.get_df(term), stats.N)
        for term, count in doc.tf.items()
    )
    return total / norm_component(scheme, doc, stats.avdl)


def ns_t(doc: Document, tdf_index: TdfIndex, scheme: WeightingScheme) -> float:
    """Same as ns with IDF taken from decayed term frequencies."""
    if doc.zero_length:
        return 0.0
    avdl = tdf_index.avdl
    total = sum(
        tf_component(scheme, count, doc.dl, avdl) * tdf_index.itdf(term, scheme)
        for term, count in doc.tf.items()
    )
    return total / norm_component(scheme, doc, avdl)
