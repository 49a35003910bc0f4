import json
from datetime import datetime

import pytest

from novelty_tdf.scorers import ScoreRecord
from novelty_tdf.stream_utils import (
    StreamRecord,
    load_scores,
    read_stream,
    save_table,
    scores_to_dataframe,
    select_text,
    write_stream,
)


def write_lines(fpath, lines):
    fpath.write_text("\n".join(lines) + "\n", encoding="utf-8")


def test_read_stream_skips_malformed(tmp_path):
    fpath = tmp_path / "stream.jsonl"
    write_lines(
        fpath,
        [
            json.dumps({"id": "a", "timestamp": 1, "text": "x"}),
            "{not json",
            json.dumps({"timestamp": 2, "text": "missing id"}),
            "",
            json.dumps({"id": 7, "timestamp": "2013-09-01T10:00:00", "text": "y", "cluster_id": 3}),
        ],
    )
    with pytest.warns(UserWarning, match="Skipped 2 malformed"):
        records = read_stream(fpath)
    assert [record.id for record in records] == ["a", "7"]
    assert isinstance(records[1].timestamp, datetime)
    assert records[1].cluster_id == "3"


def test_read_stream_skips_undecodable_line(tmp_path):
    fpath = tmp_path / "stream.jsonl"
    fpath.write_bytes(
        json.dumps({"id": "a", "timestamp": 1, "text": "x"}).encode("utf-8")
        + b"\n"
        + b'{"id": "b", "timestamp": 2, "text": "\xff\xfe"}\n'
        + json.dumps({"id": "c", "timestamp": 3, "text": "café"}).encode("utf-8")
        + b"\n"
    )
    with pytest.warns(UserWarning, match="Skipped 1 malformed"):
        records = read_stream(fpath)
    assert [record.id for record in records] == ["a", "c"]
    assert records[1].text == "café"


def test_read_stream_keeps_out_of_order_records(tmp_path):
    fpath = tmp_path / "stream.jsonl"
    write_lines(
        fpath,
        [
            json.dumps({"id": "a", "timestamp": 5, "text": "x"}),
            json.dumps({"id": "b", "timestamp": 3, "text": "y"}),
        ],
    )
    with pytest.warns(UserWarning, match="decreasing timestamps"):
        records = read_stream(fpath)
    assert [record.id for record in records] == ["a", "b"]


def test_read_stream_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_stream(tmp_path / "nope.jsonl")


def test_write_and_read_stream(tmp_path):
    records = [
        StreamRecord(id="d1", timestamp=0, title="Nexus", text="tablet", cluster_id="c1"),
        StreamRecord(id="d2", timestamp=1, text="café au lait"),
    ]
    fpath = tmp_path / "out.jsonl"
    write_stream(records, fpath)
    assert read_stream(fpath) == records


@pytest.mark.parametrize(
    "record,field,expected",
    [
        (StreamRecord(id="a", timestamp=0, title="T", text="s"), "title_snippet", ("T s", False)),
        (StreamRecord(id="a", timestamp=0, text="s"), "title_snippet", ("s", False)),
        (StreamRecord(id="a", timestamp=0, text="s", content="c"), "content", ("c", False)),
        (StreamRecord(id="a", timestamp=0, text="s"), "content", ("s", True)),
    ],
)
def test_select_text(record, field, expected):
    assert select_text(record, field) == expected


def test_scores_round_trip(tmp_path):
    records = [
        ScoreRecord("d1", 1.25, "higher_is_novel", "ns", "nsd", 20, 1500),
        ScoreRecord("nan", 0.0, "higher_is_novel", "ns", "nsd", 20, 10, zero_length=True),
    ]
    fpath = tmp_path / "scores.tsv"
    save_table(scores_to_dataframe(records), fpath)
    header = fpath.read_text(encoding="utf-8").splitlines()[0]
    assert header.split("\t")[:6] == ["doc_id", "scorer", "scheme", "N", "raw_score", "elapsed_ns"]

    df_scores = load_scores(fpath)
    assert df_scores["doc_id"].tolist() == ["d1", "nan"]
    assert df_scores["raw_score"].tolist() == [1.25, 0.0]
    assert df_scores["zero_length"].tolist() == [False, True]


def test_save_table_dry_run(tmp_path):
    fpath = tmp_path / "scores.tsv"
    save_table(scores_to_dataframe([]), fpath, dry_run=True)
    assert not fpath.exists()
