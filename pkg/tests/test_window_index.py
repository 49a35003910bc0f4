from collections import Counter

import pytest
from conftest import make_doc, random_docs

from novelty_tdf.window_index import WindowIndex


def test_push_evicts_oldest():
    window = WindowIndex(2)
    d1, d2, d3 = make_doc(["a"], "d1"), make_doc(["b"], "d2"), make_doc(["c", "b"], "d3")
    assert window.push(d1) is None
    assert window.push(d2) is None
    assert window.push(d3) is d1
    assert window.df == {"b": 2, "c": 1}
    assert [doc.id for doc in window] == ["d2", "d3"]


def test_df_counts_documents_not_occurrences():
    window = WindowIndex(3)
    window.push(make_doc({"a": 2}))
    assert window.stats().get_df("a") == 1
    assert window.summary_tf == {"a": 2}


def test_eviction_restores_previous_state():
    window = WindowIndex(1)
    window.push(make_doc({"a": 1}, "d1"))
    window.push(make_doc({"b": 1}, "d2"))
    assert "a" not in window.df
    assert "a" not in window.summary_tf


def test_stats():
    window = WindowIndex(5)
    empty = window.stats()
    assert (empty.N, empty.avdl) == (0, 1.0)
    assert empty.get_df("unseen") == 0

    window.push(make_doc({"a": 10}))
    window.push(make_doc({"a": 5, "b": 15}))
    stats = window.stats()
    assert (stats.N, stats.avdl) == (2, 15.0)
    assert stats.get_df("a") == 2


def test_stats_stays_consistent_after_push():
    window = WindowIndex(1)
    window.push(make_doc({"a": 1}))
    stats = window.stats()
    with pytest.raises(TypeError):
        stats.df["a"] = 5
    window.push(make_doc({"a": 1}))
    window.push(make_doc({"b": 1}))
    assert (stats.N, stats.get_df("a"), stats.get_df("b")) == (1, 1, 0)
    assert all(df <= stats.N for df in stats.df.values())


def test_live_stats_is_read_only_view():
    window = WindowIndex(5)
    window.push(make_doc({"a": 1}))
    view = window.live_stats()
    with pytest.raises(TypeError):
        view.df["a"] = 5
    window.push(make_doc({"a": 1}))
    assert view.get_df("a") == 2
    assert window.live_stats().N == 2


def test_summary_document():
    window = WindowIndex(3)
    assert window.summary_document().tf == {}
    window.push(make_doc({"a": 1}))
    window.push(make_doc({"a": 2, "b": 1}))
    summary = window.summary_document()
    assert summary.tf == {"a": 3, "b": 1}
    assert summary.dl == 4


def test_summary_empty_after_full_eviction():
    window = WindowIndex(2)
    for terms in (["a"], ["b", "b"]):
        window.push(make_doc(terms))
    window.push(make_doc({}))
    window.push(make_doc({}))
    assert window.summary_document().tf == {}
    assert window.df == {}
    assert window.sum_dl == 0


@pytest.mark.parametrize("capacity", [1, 5, 20, 60])
def test_incremental_matches_recomputation(rng, capacity):
    window = WindowIndex(capacity)
    for doc in random_docs(rng, 300, 80):
        window.push(doc)
        assert len(window) <= capacity
        stored = list(window)
        expected_df = Counter(term for stored_doc in stored for term in stored_doc.tf)
        expected_summary = Counter()
        for stored_doc in stored:
            expected_summary.update(stored_doc.tf)
        assert window.df == dict(expected_df)
        assert window.summary_tf == dict(expected_summary)
        assert window.sum_dl == sum(stored_doc.dl for stored_doc in stored)


def test_capacity_must_be_positive():
    with pytest.raises(ValueError):
        WindowIndex(0)
