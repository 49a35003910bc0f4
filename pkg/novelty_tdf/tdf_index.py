"""Temporal document frequency: decayed per-term counts without stored documents."""

import math
import re
from collections import deque
from pathlib import Path
from typing import Optional

import pandas as pd

from novelty_tdf.config import DecayConfig, WeightingScheme
from novelty_tdf.env import (
    COL_T_LAST,
    COL_TERM,
    COL_VALUE,
    DECAY_EXP1,
    DECAY_EXP2,
    DECAY_LINEAR,
    DECAY_SIGMOID,
    TDF_HEADER_PREFIX,
)
from novelty_tdf.exceptions import DeltaOutOfRange
from novelty_tdf.text_pipeline import Document
from novelty_tdf.weighting import idf_component

RE_HEADER = re.compile(r"(\w+)=(\S+)")


def decay_factor(config: DecayConfig, delta: int) -> float:
    """Weight kept by a term last seen ``delta`` documents ago.

    Parameters
    ----------
    config : DecayConfig
    delta : int
        Gap in documents, 1 <= delta <= config.N

    Returns
    -------
    float
        In [0, 1], non-increasing in delta
    """
    N, alpha = config.N, config.alpha
    if delta < 1 or delta > N:
        raise DeltaOutOfRange(f"delta must be in [1, {N}], got {delta}")

    if config.kind == DECAY_LINEAR:
        return 1 - (delta - 1) / N
    if config.kind == DECAY_EXP1:
        return math.exp(-(delta - 1) / alpha) if delta < N else 0.0
    if config.kind == DECAY_EXP2:
        return 1 - math.exp((delta - N) / alpha)
    if config.kind == DECAY_SIGMOID:
        if delta == N:
            return 0.0
        z = (delta - N / 2) / alpha
        if z >= 0:
            e = math.exp(-z)
            return e / (1 + e)
        return 1 / (1 + math.exp(z))
    raise ValueError(f"Unknown decay function: {config.kind}")


class TdfIndex:
    """Per-term (value, t_last) entries decayed lazily on read.

    ``now`` counts observed documents. Reads never mutate entries; entries
    whose gap reached N answer 0 and are dropped by ``purge``.
    """

    def __init__(self, decay: DecayConfig, now: int = 0):
        self.decay = decay
        self.now = now
        self.entries: dict[str, tuple[float, int]] = {}
        # lengths of the last N documents, for BM25 and pivot normalization
        self.recent_dl: deque[int] = deque()
        self.sum_dl = 0

    @property
    def N(self) -> int:
        return self.decay.N

    @property
    def avdl(self) -> float:
        return self.sum_dl / len(self.recent_dl) if self.recent_dl else 1.0

    @property
    def n_documents(self) -> int:
        # only terms are kept
        return 0

    def __len__(self) -> int:
        return len(self.entries)

    def _record_length(self, dl: int):
        if len(self.recent_dl) == self.N:
            self.sum_dl -= self.recent_dl.popleft()
        self.recent_dl.append(dl)
        self.sum_dl += dl

    def observe(self, doc: Document):
        self.now += 1
        self._record_length(doc.dl)
        now, N = self.now, self.N
        for term in doc.tf:
            entry = self.entries.get(term)
            if entry is not None and now - entry[1] < N:
                value, t_last = entry
                value = value * decay_factor(self.decay, now - t_last) + 1
            else:
                value = 1.0
            self.entries[term] = (value, now)

    def query_tdf(self, term: str) -> float:
        entry = self.entries.get(term)
        if entry is None:
            return 0.0
        value, t_last = entry
        delta = self.now - t_last
        if delta == 0:
            return value
        if delta >= self.N:
            return 0.0
        return value * decay_factor(self.decay, delta)

    def itdf(self, term: str, scheme: WeightingScheme) -> float:
        # tDF grows past N on terms present in every document
        tdf = min(self.query_tdf(term), self.N)
        return idf_component(scheme, tdf, self.N)

    def purge(self) -> int:
        """Drop entries that left the window; returns how many were dropped."""
        threshold = self.now - self.N
        stale = [term for term, (_, t_last) in self.entries.items() if t_last <= threshold]
        for term in stale:
            del self.entries[term]
        return len(stale)

    def save(self, fpath: Path | str):
        fpath = Path(fpath)
        fpath.parent.mkdir(parents=True, exist_ok=True)
        df_entries = pd.DataFrame(
            [
                (term, value, t_last)
                for term, (value, t_last) in sorted(self.entries.items())
            ],
            columns=[COL_TERM, COL_VALUE, COL_T_LAST],
        )
        with fpath.open("w", encoding="utf-8", newline="") as file_tdf:
            file_tdf.write(
                f"{TDF_HEADER_PREFIX} now={self.now} decay={self.decay.kind}"
                f" N={self.decay.N} alpha={self.decay.alpha!r}"
                f" dl={','.join(map(str, self.recent_dl))}\n"
            )
            df_entries.to_csv(file_tdf, sep="\t", index=False)

    @classmethod
    def load(cls, fpath: Path | str, decay: Optional[DecayConfig] = None) -> "TdfIndex":
        """Restore a snapshot; a given decay config must match the stored one."""
        fpath = Path(fpath)
        if not fpath.exists():
            raise FileNotFoundError(f"tDF snapshot {fpath} does not exist")

        with fpath.open(encoding="utf-8") as file_tdf:
            header = file_tdf.readline()
        if not header.startswith(TDF_HEADER_PREFIX):
            raise ValueError(f"Missing header line in tDF snapshot {fpath}")
        params = dict(RE_HEADER.findall(header))
        try:
            stored = DecayConfig(
                kind=params["decay"], N=int(params["N"]), alpha=float(params["alpha"])
            )
            now = int(params["now"])
        except KeyError as exception:
            raise ValueError(
                f"Incomplete header in tDF snapshot {fpath}: {header.strip()}"
            ) from exception
        if decay is not None and decay != stored:
            raise ValueError(
                f"tDF snapshot {fpath} was built with {stored}, requested {decay}"
            )

        df_entries = pd.read_csv(
            fpath,
            sep="\t",
            skiprows=1,
            dtype={COL_TERM: str, COL_VALUE: float, COL_T_LAST: int},
            keep_default_na=False,
            float_precision="round_trip",
        )
        tdf_index = cls(stored, now=now)
        for dl in params.get("dl", "").split(","):
            if dl != "":
                tdf_index._record_length(int(dl))
        tdf_index.entries = {
            term: (float(value), int(t_last))
            for term, value, t_last in df_entries[
                [COL_TERM, COL_VALUE, COL_T_LAST]
            ].itertuples(index=False)
        }
        return tdf_index
