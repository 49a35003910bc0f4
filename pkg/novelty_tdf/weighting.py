"""SMART term-weighting components (TF, IDF, normalization), BM25 included."""

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from novelty_tdf.config import WeightingScheme
from novelty_tdf.exceptions import DegenerateFrequency, ZeroNorm
from novelty_tdf.text_pipeline import Document


@dataclass(frozen=True)
class CollectionStats:
    """Document count, mean length and document frequencies of a corpus."""

    N: int
    avdl: float
    df: Mapping[str, float] = field(default_factory=lambda: MappingProxyType({}))

    def get_df(self, term: str) -> float:
        return self.df.get(term, 0)


def tf_component(scheme: WeightingScheme, tf: int, dl: int = 0, avdl: float = 1.0) -> float:
    variant = scheme.tf_variant
    if variant == "b":
        return 1.0 if tf > 0 else 0.0
    if variant == "n":
        return float(tf)
    if variant == "l":
        return 1.0 + math.log(tf) if tf >= 1 else 0.0
    if variant == "k":
        k1, b = scheme.k1, scheme.b
        return ((k1 + 1) * tf) / (k1 * (1 - b + b * dl / avdl) + tf)
    raise ValueError(f"Unknown TF variant: {variant}")


def idf_component(scheme: WeightingScheme, df: float, N: float) -> float:
    """Natural-log IDF.

    Parameters
    ----------
    scheme : WeightingScheme
    df : float
        Document frequency, 0 <= df <= N (may be fractional for tDF)
    N : float
        Collection size

    Returns
    -------
    float
        Can be negative for the probabilistic variants
    """
    variant = scheme.idf_variant
    if variant == "s":
        return math.log((N + 1) / (df + 0.5))
    if variant == "b":
        return math.log((N - df + 0.5) / (df + 0.5))
    if variant == "t":
        if df <= 0:
            raise DegenerateFrequency(f"IDF variant t is undefined for df={df}")
        return math.log(N / df)
    if variant == "p":
        if df <= 0 or df >= N:
            raise DegenerateFrequency(
                f"IDF variant p is undefined for df={df} with N={N}"
            )
        return math.log((N - df) / df)
    raise ValueError(f"Unknown IDF variant: {variant}")


def norm_component(scheme: WeightingScheme, doc: Document, avdl: float = 1.0) -> float:
    variant = scheme.norm_variant
    if variant == "n":
        return 1.0
    if doc.zero_length:
        raise ZeroNorm(f"Cannot apply norm {variant!r} to empty document {doc.id}")
    if variant == "u":
        return float(doc.uniq)
    if variant == "d":
        return float(doc.dl)
    if variant == "c":
        return math.sqrt(sum(count * count for count in doc.tf.values()))
    if variant == "p":
        return 1 - scheme.b + scheme.b * doc.dl / avdl
    raise ValueError(f"Unknown normalization variant: {variant}")


def term_weight(
    scheme: WeightingScheme, doc: Document, term: str, stats: CollectionStats
) -> float:
    return tf_component(scheme, doc.tf[term], doc.dl, stats.avdl) * idf_component(
        scheme, stats.get_df(term), stats.N
    )
