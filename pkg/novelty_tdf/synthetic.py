"""Labelled synthetic streams with known first stories."""

from dataclasses import dataclass

import numpy as np

from novelty_tdf.stream_utils import StreamRecord


@dataclass(frozen=True)
class SyntheticParams:
    """Shape of a synthetic stream.

    Parameters
    ----------
    n_clusters : int
        Number of events
    mean_cluster_size : float
        Mean of the geometric distribution of cluster sizes (>= 1)
    topic_vocab_size : int
        Terms per cluster; cluster vocabularies are disjoint
    background_vocab_size : int
        Terms shared by every cluster
    background_fraction : float
        Share of each document's tokens drawn from the background vocabulary
    mean_length : float
        Mean document length in tokens
    length_sigma : float
        Log-normal spread of document lengths, 0 for fixed length
    overlap : float
        0 gives contiguous clusters, larger values interleave neighbours
    """

    n_clusters: int = 100
    mean_cluster_size: float = 5.0
    topic_vocab_size: int = 10
    background_vocab_size: int = 15
    background_fraction: float = 0.3
    mean_length: float = 27.0
    length_sigma: float = 0.0
    overlap: float = 0.0

    def __post_init__(self):
        if self.n_clusters < 1:
            raise ValueError(f"n_clusters must be positive, got {self.n_clusters}")
        if self.mean_cluster_size < 1:
            raise ValueError(
                f"mean_cluster_size must be >= 1, got {self.mean_cluster_size}"
            )
        if self.topic_vocab_size < 1:
            raise ValueError(
                f"topic_vocab_size must be positive, got {self.topic_vocab_size}"
            )
        if not 0 <= self.background_fraction <= 1:
            raise ValueError(
                f"background_fraction must be in [0, 1], got {self.background_fraction}"
            )
        if self.background_fraction > 0 and self.background_vocab_size < 1:
            raise ValueError("A background fraction needs a background vocabulary")
        if self.mean_length < 1 or self.length_sigma < 0 or self.overlap < 0:
            raise ValueError(
                "mean_length must be >= 1, length_sigma and overlap must be >= 0"
            )


def topic_term(i_cluster: int, i_term: int) -> str:
    return f"t{i_cluster}x{i_term}"


def background_term(i_term: int) -> str:
    return f"bg{i_term}"


def _document_length(rng: np.random.Generator, params: SyntheticParams) -> int:
    if params.length_sigma == 0:
        return max(1, int(round(params.mean_length)))
    # mean of the log-normal is mean_length
    mu = np.log(params.mean_length) - params.length_sigma**2 / 2
    return max(1, int(round(rng.lognormal(mean=mu, sigma=params.length_sigma))))


def generate_synthetic(seed: int, params: SyntheticParams = SyntheticParams()) -> list[StreamRecord]:
    """Generate a stream where the first document of each cluster is the novel one.

    Clusters are laid out in order; with ``overlap`` > 0 every non-first
    document is shifted forward by up to ``overlap`` cluster slots, so
    neighbouring clusters interleave while first documents stay first.
    """
    rng = np.random.default_rng(seed=seed)
    background = [background_term(j) for j in range(params.background_vocab_size)]

    docs = []  # (sort key, cluster, text)
    for i_cluster in range(params.n_clusters):
        size = int(rng.geometric(1 / params.mean_cluster_size))
        vocabulary = [topic_term(i_cluster, j) for j in range(params.topic_vocab_size)]
        for i_doc in range(size):
            length = _document_length(rng, params)
            n_background = int(round(params.background_fraction * length))
            if n_background == length and params.background_fraction < 1:
                n_background = length - 1
            tokens = list(rng.choice(vocabulary, size=length - n_background))
            if n_background > 0:
                tokens.extend(rng.choice(background, size=n_background))
            rng.shuffle(tokens)

            shift = 0.0 if i_doc == 0 else params.overlap * rng.random()
            docs.append((i_cluster + shift, i_cluster, " ".join(map(str, tokens))))

    order = np.argsort([doc[0] for doc in docs], kind="stable")
    return [
        StreamRecord(
            id=f"doc{position:06d}",
            timestamp=position,
            text=docs[i_doc][2],
            cluster_id=f"c{docs[i_doc][1]}",
        )
        for position, i_doc in enumerate(order)
    ]
