import math

import numpy as np
import pytest
from conftest import make_doc, random_docs

from novelty_tdf.config import DecayConfig, GridConfig, RunConfig
from novelty_tdf.evaluation import derive_labels
from novelty_tdf.runner import (
    StreamScorer,
    bench,
    grid_configs,
    prepare_documents,
    run_grid_cell,
    run_stream,
    score_documents,
)
from novelty_tdf.stream_utils import StreamRecord
from novelty_tdf.synthetic import SyntheticParams, generate_synthetic
from novelty_tdf.tdf_index import TdfIndex


def test_ns_hand_trace():
    docs = [
        make_doc(["a", "b"], "d0", 0),
        make_doc(["a", "c"], "d1", 1),
        make_doc(["a", "d"], "d2", 2),
    ]
    stream_run = score_documents(docs, RunConfig(SCORER="ns", N=2, TIMING=False))
    scores = [record.raw_score for record in stream_run.records]
    assert scores == pytest.approx(
        [
            math.log(2),
            (math.log(2 / 1.5) + math.log(4)) / 2,
            (math.log(3 / 2.5) + math.log(6)) / 2,
        ],
        abs=1e-12,
    )
    assert [record.doc_id for record in stream_run.records] == ["d0", "d1", "d2"]
    assert stream_run.peak_documents == 2


def test_no_timing_is_deterministic(rng):
    docs = random_docs(rng, 60, 40)
    config = RunConfig(SCORER="ns", N=10, TIMING=False)
    first = score_documents(docs, config).to_dataframe()
    second = score_documents(docs, config).to_dataframe()
    assert first.equals(second)
    assert (first["elapsed_ns"] == 0).all()


def test_stream_shorter_than_window(rng):
    docs = random_docs(rng, 5, 20)
    stream_run = score_documents(docs, RunConfig(SCORER="max_cs", N=100))
    assert len(stream_run.records) == 5
    assert stream_run.peak_documents == 5
    assert stream_run.records[0].raw_score == 0.0


@pytest.mark.parametrize("scorer", ["ns", "max_cs", "mean_cs", "agg_cs", "min_kl"])
def test_window_scorers_store_at_most_n(rng, scorer):
    docs = random_docs(rng, 40, 30)
    stream_run = score_documents(docs, RunConfig(SCORER=scorer, N=7))
    assert stream_run.peak_documents == 7
    assert len(stream_run.scorer.memory) == 7


def test_ns_t_stores_no_documents(rng):
    docs = random_docs(rng, 40, 30)
    stream_run = score_documents(docs, RunConfig(SCORER="ns_t", N=7))
    assert stream_run.peak_documents == 0
    assert isinstance(stream_run.scorer.memory, TdfIndex)


def test_scheme_names():
    assert StreamScorer(RunConfig(SCORER="min_kl")).scheme_name == "lm"
    assert StreamScorer(RunConfig(SCORER="mean_cs")).scheme_name == "kbn"
    assert StreamScorer(RunConfig(SCORER="ns_t", SCHEME="bsu")).scheme_name == "bsu"


def test_scorer_rejects_wrong_index():
    with pytest.raises(ValueError):
        StreamScorer(RunConfig(SCORER="ns"), tdf_index=TdfIndex(DecayConfig(N=100)))
    with pytest.raises(ValueError):
        StreamScorer(
            RunConfig(SCORER="ns_t", N=50), tdf_index=TdfIndex(DecayConfig(N=100))
        )


def test_periodic_purge():
    docs = [make_doc([f"w{i}"], f"d{i}", i) for i in range(10)]
    stream_run = score_documents(docs, RunConfig(SCORER="ns_t", N=3, PURGE_EVERY=1))
    assert sorted(stream_run.scorer.memory.entries) == ["w7", "w8", "w9"]


def test_tdf_snapshot_resume(rng, tmp_path):
    docs = random_docs(rng, 80, 30)
    config = RunConfig(SCORER="ns_t", N=15, DECAY="exp2", ALPHA=4.0, TIMING=False)
    full = [record.raw_score for record in score_documents(docs, config).records]

    first_half = score_documents(docs[:33], config)
    fpath = tmp_path / "tdf.tsv"
    first_half.scorer.memory.save(fpath)
    resumed = score_documents(
        docs[33:], config, tdf_index=TdfIndex.load(fpath, decay=config.decay_config)
    )
    split = [record.raw_score for record in first_half.records + resumed.records]
    assert split == pytest.approx(full, abs=1e-12)


def test_run_stream_content_fallback():
    records = [
        StreamRecord(id="a", timestamp=0, text="quiet river", content="loud storm"),
        StreamRecord(id="b", timestamp=1, text="storm warning"),
    ]
    config = RunConfig(SCORER="ns", N=5, FIELD="content")
    with pytest.warns(UserWarning, match="no content"):
        stream_run = run_stream(records, config, stoplist=frozenset())
    assert stream_run.n_content_fallback == 1


def test_prepare_documents_uses_stream_position():
    records = [
        StreamRecord(id="x", timestamp=1000, title="The Storms", text="are coming"),
        StreamRecord(id="y", timestamp=5, text=""),
    ]
    docs, n_fallback = prepare_documents(records, "title_snippet", {"the", "are"})
    assert [doc.timestamp for doc in docs] == [0, 1]
    assert docs[0].tf == {"storm": 1, "come": 1}
    assert docs[1].zero_length
    assert n_fallback == 0


def test_grid_configs():
    grid = GridConfig(
        SCORERS="ns,ns_t,max_cs",
        SCHEMES="nsd,bsu",
        WINDOWS="20,40",
        DECAYS="linear,sigmoid",
        ALPHAS="10,35",
    )
    configs = grid_configs(RunConfig(), grid)
    by_scorer = {}
    for config in configs:
        by_scorer.setdefault(config.SCORER, []).append(config)
    assert len(by_scorer["ns"]) == 4
    assert len(by_scorer["ns_t"]) == 16
    assert len(by_scorer["max_cs"]) == 2
    assert not any(config.TIMING for config in configs)


def test_run_grid_cell():
    records = generate_synthetic(0, SyntheticParams(n_clusters=30))
    truth = derive_labels(
        [record.id for record in records], [record.cluster_id for record in records]
    )
    docs, _ = prepare_documents(records, "title_snippet", frozenset())

    row = run_grid_cell(docs, truth, RunConfig(SCORER="ns", N=20, FOLDS=2, TIMING=False))
    assert row["scorer"] == "ns"
    assert row["decay"] == ""
    assert np.isnan(row["alpha"])
    assert 0 <= row["avgC_Det"] <= 1

    row = run_grid_cell(docs, truth, RunConfig(SCORER="ns_t", N=20, DECAY="linear", FOLDS=2))
    assert row["decay"] == "linear"
    assert row["alpha"] == 35.0


def test_bench_columns(rng):
    docs = random_docs(rng, 20, 30)
    df_bench = bench(docs, ["ns", "mean_cs"], [5, 10], repetitions=1)
    assert list(df_bench.columns) == [
        "scorer",
        "N",
        "n_docs",
        "mean_us",
        "p95_us",
        "update_mean_us",
    ]
    assert len(df_bench) == 4
    assert (df_bench["n_docs"] == 20).all()
    assert (df_bench["mean_us"] > 0).all()
    with pytest.raises(ValueError):
        bench(docs, ["ns"], [5], repetitions=0)
