import pytest

from novelty_tdf.config import RunConfig
from novelty_tdf.env import LABEL_NOVEL
from novelty_tdf.evaluation import derive_labels
from novelty_tdf.runner import prepare_documents, score_documents
from novelty_tdf.synthetic import SyntheticParams, generate_synthetic
from novelty_tdf.text_pipeline import tokenize


def test_same_seed_same_stream():
    params = SyntheticParams(n_clusters=20, length_sigma=0.5, overlap=1.5)
    assert generate_synthetic(3, params) == generate_synthetic(3, params)
    assert generate_synthetic(3, params) != generate_synthetic(4, params)


def test_no_overlap_gives_contiguous_clusters():
    records = generate_synthetic(0, SyntheticParams(n_clusters=30))
    clusters = [record.cluster_id for record in records]
    runs = [cluster for i, cluster in enumerate(clusters) if i == 0 or clusters[i - 1] != cluster]
    assert runs == [f"c{i}" for i in range(30)]


def test_overlap_interleaves_but_first_stays_first():
    params = SyntheticParams(n_clusters=50, mean_cluster_size=6, overlap=3.0)
    records = generate_synthetic(1, params)
    clusters = [record.cluster_id for record in records]
    runs = [cluster for i, cluster in enumerate(clusters) if i == 0 or clusters[i - 1] != cluster]
    assert len(runs) > 50

    # first document of each cluster (by generation) keeps its cluster's novel label
    truth = derive_labels([record.id for record in records], clusters)
    assert truth.n_novel == 50
    firsts = [record.cluster_id for record in records if truth.labels[record.id] == "novel"]
    assert firsts == [f"c{i}" for i in range(50)]


def test_disjoint_vocabularies_and_background_share():
    params = SyntheticParams(n_clusters=10, background_fraction=0.3, mean_length=20)
    for record in generate_synthetic(2, params):
        tokens = tokenize(record.text)
        assert len(tokens) == 20
        assert sum(token.startswith("bg") for token in tokens) == 6
        cluster = record.cluster_id[1:]
        assert all(
            token.startswith("bg") or token.startswith(f"t{cluster}x") for token in tokens
        )


def test_zero_background():
    params = SyntheticParams(n_clusters=5, background_fraction=0.0)
    for record in generate_synthetic(2, params):
        assert not any(token.startswith("bg") for token in tokenize(record.text))


def test_length_heterogeneity():
    params = SyntheticParams(n_clusters=50, mean_length=27, length_sigma=0.8)
    lengths = [len(tokenize(record.text)) for record in generate_synthetic(5, params)]
    assert min(lengths) < 15 < 45 < max(lengths)


def test_invalid_params():
    with pytest.raises(ValueError):
        SyntheticParams(background_fraction=1.5)
    with pytest.raises(ValueError):
        SyntheticParams(mean_cluster_size=0.5)


def test_disjoint_topics_without_background_separate_first_stories():
    params = SyntheticParams(n_clusters=30, topic_vocab_size=1, background_fraction=0.0)
    records = generate_synthetic(4, params)
    truth = derive_labels(
        [record.id for record in records], [record.cluster_id for record in records]
    )
    docs, _ = prepare_documents(records, "title_snippet", frozenset())
    N = 2
    stream_run = score_documents(docs, RunConfig(SCORER="ns", SCHEME="nsd", N=N, TIMING=False))

    # once the window is full, every other document of a cluster shares its
    # only term with the previous document
    novel, not_novel = [], []
    for record in stream_run.records[N:]:
        label = truth.labels[record.doc_id]
        (novel if label == LABEL_NOVEL else not_novel).append(record.raw_score)
    assert novel and not_novel
    assert min(novel) > max(not_novel)
