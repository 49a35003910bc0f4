import json
import warnings
from datetime import datetime
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import pandas as pd
from pydantic import BaseModel, ValidationError, field_validator

from novelty_tdf.env import (
    COL_DOC_ID,
    COL_ELAPSED_NS,
    COL_N,
    COL_RAW_SCORE,
    COL_SCHEME,
    COL_SCORER,
    COL_ZERO_LENGTH,
    COLS_SCORES,
    FIELD_CONTENT_ONLY,
    FIELD_TITLE_SNIPPET,
)
from novelty_tdf.scorers import ScoreRecord


class StreamRecord(BaseModel):
    """One line of a JSON-lines stream."""

    id: str
    timestamp: Union[int, datetime]
    title: Optional[str] = None
    text: str = ""
    content: Optional[str] = None
    cluster_id: Optional[str] = None

    @field_validator("id", "cluster_id", mode="before")
    @classmethod
    def coerce_to_str(cls, value):
        if value is None or isinstance(value, str):
            return value
        return str(value)

    def sort_key(self) -> float:
        if isinstance(self.timestamp, datetime):
            return self.timestamp.timestamp()
        return float(self.timestamp)


def _describe(exception: Exception) -> str:
    if isinstance(exception, ValidationError):
        return exception.errors()[0]["msg"]
    return str(exception)


def iter_stream(fpath: Path | str, logger=None) -> Iterator[StreamRecord]:
    """Yield valid records in file order.

    Malformed lines are skipped and reported once at the end with their count.
    Out-of-order timestamps are reported but the file order is kept.
    """
    fpath = Path(fpath)
    if not fpath.exists():
        raise FileNotFoundError(f"Stream file {fpath} does not exist")

    n_malformed = 0
    n_out_of_order = 0
    first_bad_lines = []
    previous_key = None
    # decoded per line; an invalid byte drops only its own line
    with fpath.open("rb") as file_stream:
        for i_line, raw_line in enumerate(file_stream, start=1):
            try:
                line = raw_line.decode("utf-8")
                if line.strip() == "":
                    continue
                record = StreamRecord.model_validate_json(line)
            except (UnicodeDecodeError, ValidationError) as exception:
                n_malformed += 1
                if len(first_bad_lines) < 5:
                    first_bad_lines.append(i_line)
                if logger is not None:
                    logger.debug(f"Skipping line {i_line}: {_describe(exception)}")
                continue

            try:
                key = record.sort_key()
            except (TypeError, ValueError, OverflowError):
                key = None
            if key is not None and previous_key is not None and key < previous_key:
                n_out_of_order += 1
                if logger is not None:
                    logger.debug(f"Record {record.id} (line {i_line}) is out of order")
            if key is not None:
                previous_key = key
            yield record

    if n_malformed > 0:
        warnings.warn(
            f"Skipped {n_malformed} malformed line(s) in {fpath}"
            f" (first: {first_bad_lines})",
            stacklevel=2,
        )
    if n_out_of_order > 0:
        warnings.warn(
            f"{n_out_of_order} record(s) in {fpath} have decreasing timestamps;"
            " file order is kept",
            stacklevel=2,
        )


def read_stream(fpath: Path | str, logger=None) -> list[StreamRecord]:
    records = list(iter_stream(fpath, logger=logger))
    if logger is not None:
        logger.info(f"Read {len(records)} records from {fpath}")
    return records


def write_stream(records: Iterable[StreamRecord], fpath: Path | str):
    fpath = Path(fpath)
    fpath.parent.mkdir(parents=True, exist_ok=True)
    with fpath.open("w", encoding="utf-8", newline="\n") as file_stream:
        for record in records:
            file_stream.write(
                json.dumps(
                    record.model_dump(mode="json", exclude_none=True),
                    ensure_ascii=False,
                )
                + "\n"
            )


def select_text(record: StreamRecord, field: str) -> tuple[str, bool]:
    """Text to score for a record; second value is True on content fallback."""
    if field == FIELD_TITLE_SNIPPET:
        parts = [record.title, record.text]
        return " ".join(part for part in parts if part), False
    if field == FIELD_CONTENT_ONLY:
        if record.content:
            return record.content, False
        return record.text, True
    raise ValueError(f"Unknown text field: {field}")


def scores_to_dataframe(records: Iterable[ScoreRecord]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                COL_DOC_ID: record.doc_id,
                COL_SCORER: record.scorer_name,
                COL_SCHEME: record.scheme,
                COL_N: record.N,
                COL_RAW_SCORE: record.raw_score,
                COL_ELAPSED_NS: record.elapsed_ns,
                COL_ZERO_LENGTH: record.zero_length,
            }
            for record in records
        ],
        columns=COLS_SCORES,
    )


def save_table(
    df: pd.DataFrame, fpath: Path | str, sep: str = "\t", dry_run=False, logger=None
):
    fpath = Path(fpath)
    if dry_run:
        if logger is not None:
            logger.info(f"[dry run] Would write {len(df)} rows to {fpath}")
        return
    fpath.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(fpath, sep=sep, index=False)
    if logger is not None:
        logger.info(f"Wrote {len(df)} rows to {fpath}")


def load_scores(fpath: Path | str) -> pd.DataFrame:
    fpath = Path(fpath)
    if not fpath.exists():
        raise FileNotFoundError(f"Score file {fpath} does not exist")
    df_scores = pd.read_csv(
        fpath,
        sep="\t",
        dtype={COL_DOC_ID: str, COL_SCORER: str, COL_SCHEME: str},
        keep_default_na=False,
        float_precision="round_trip",
    )
    missing = set(COLS_SCORES) - {COL_ZERO_LENGTH} - set(df_scores.columns)
    if len(missing) > 0:
        raise RuntimeError(f"Score file {fpath} is missing columns: {sorted(missing)}")
    if COL_ZERO_LENGTH in df_scores.columns:
        df_scores[COL_ZERO_LENGTH] = (
            df_scores[COL_ZERO_LENGTH].astype(str).str.lower() == "true"
        )
    return df_scores
