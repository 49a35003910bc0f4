import math

import pytest
from conftest import make_doc
from pydantic import ValidationError

from novelty_tdf.config import WeightingScheme
from novelty_tdf.exceptions import DegenerateFrequency, ZeroNorm
from novelty_tdf.weighting import (
    CollectionStats,
    idf_component,
    norm_component,
    term_weight,
    tf_component,
)


def scheme(code, **kwargs):
    return WeightingScheme.from_smart(code, **kwargs)


@pytest.mark.parametrize(
    "code,tf,dl,avdl,expected",
    [
        ("lsn", 1, 1, 1.0, 1.0),
        ("lsn", 0, 1, 1.0, 0.0),
        ("lsn", 3, 3, 1.0, 1 + math.log(3)),
        ("kbn", 1, 10, 10.0, 1.0),
        ("bsn", 7, 7, 1.0, 1.0),
        ("bsn", 0, 7, 1.0, 0.0),
        ("nsn", 4, 4, 1.0, 4.0),
    ],
)
def test_tf_component(code, tf, dl, avdl, expected):
    assert tf_component(scheme(code), tf, dl, avdl) == pytest.approx(expected, abs=1e-9)


def test_tf_bm25_increasing_and_bounded():
    kbn = scheme("kbn")
    values = [tf_component(kbn, tf, 20, 15.0) for tf in range(1, 200)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert values[-1] < kbn.k1 + 1


@pytest.mark.parametrize(
    "code,df,N,expected",
    [
        ("nsn", 9, 100, math.log(101 / 9.5)),
        ("nbn", 50, 100, 0.0),
        ("npn", 60, 100, math.log(40 / 60)),
        ("ntn", 10, 100, math.log(10)),
        ("nsn", 0, 0, math.log(2)),
    ],
)
def test_idf_component(code, df, N, expected):
    assert idf_component(scheme(code), df, N) == pytest.approx(expected, abs=1e-9)


def test_idf_smoothed_hand_values():
    assert idf_component(scheme("nsn"), 9, 100) == pytest.approx(2.3639, abs=1e-4)
    assert idf_component(scheme("npn"), 60, 100) == pytest.approx(-0.4055, abs=1e-4)


@pytest.mark.parametrize("code,df,N", [("ntn", 0, 10), ("npn", 0, 10), ("npn", 10, 10)])
def test_idf_degenerate(code, df, N):
    with pytest.raises(DegenerateFrequency):
        idf_component(scheme(code), df, N)


def test_idf_smoothed_strictly_decreasing():
    nsn = scheme("nsn")
    values = [idf_component(nsn, df, 50) for df in range(51)]
    assert all(b < a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize(
    "code,tf,expected",
    [
        ("nsd", {"a": 20, "b": 7}, 27.0),
        ("nsc", {"a": 3, "b": 4}, 5.0),
        ("nsn", {"a": 3}, 1.0),
        ("nsu", {"a": 3, "b": 1, "c": 2}, 3.0),
    ],
)
def test_norm_component(code, tf, expected):
    assert norm_component(scheme(code), make_doc(tf)) == pytest.approx(expected)


def test_norm_pivot():
    doc = make_doc({"a": 10, "b": 10})
    assert norm_component(scheme("nsp"), doc, avdl=10.0) == pytest.approx(
        1 - 0.75 + 0.75 * 2
    )


def test_norm_empty_document():
    empty = make_doc({})
    assert norm_component(scheme("nsn"), empty) == 1.0
    with pytest.raises(ZeroNorm):
        norm_component(scheme("nsd"), empty)


def test_bm25_term_score_matches_hand_value():
    # classic BM25 with the add-half odds IDF
    kbn = scheme("kbn")
    doc = make_doc({"q": 3, "x": 9})
    stats = CollectionStats(N=20, avdl=8.0, df={"q": 4})
    k1, b = 1.2, 0.75
    tf_part = (k1 + 1) * 3 / (k1 * (1 - b + b * 12 / 8.0) + 3)
    idf_part = math.log((20 - 4 + 0.5) / (4 + 0.5))
    assert term_weight(kbn, doc, "q", stats) == pytest.approx(tf_part * idf_part, abs=1e-9)


def test_scheme_rejects_double_normalization():
    with pytest.raises(ValidationError):
        scheme("kbd")
    with pytest.raises(ValidationError):
        scheme("ksp")
    # no slope, no double normalization
    assert scheme("ksd", b=0.0).smart == "ksd"


def test_scheme_rejects_unknown_letters():
    with pytest.raises(ValueError):
        scheme("xyz")
    with pytest.raises(ValueError):
        scheme("nsdd")
