from collections import deque
from types import MappingProxyType
from typing import Iterator, Optional

from novelty_tdf.text_pipeline import Document
from novelty_tdf.weighting import CollectionStats

SUMMARY_DOC_ID = "__window_summary__"


class WindowIndex:
    """Last-N documents with incremental DF, length and summary counts.

    Single writer: ``push`` must not run concurrently with itself.
    ``stats()`` returns a copy that stays valid across later pushes.
    ``live_stats()`` is a read-only view that is only consistent until the
    next push.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"Window capacity must be positive, got {capacity}")
        self.capacity = capacity
        self.docs: deque[Document] = deque()
        self.df: dict[str, int] = {}
        self.sum_dl = 0
        self.summary_tf: dict[str, int] = {}

    def __len__(self) -> int:
        return len(self.docs)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.docs)

    @property
    def n_documents(self) -> int:
        """Number of stored documents."""
        return len(self.docs)

    @property
    def is_full(self) -> bool:
        return len(self.docs) == self.capacity

    def push(self, doc: Document) -> Optional[Document]:
        evicted = None
        if len(self.docs) == self.capacity:
            evicted = self.docs.popleft()
            self._remove(evicted)
        self.docs.append(doc)
        self._add(doc)
        return evicted

    def _add(self, doc: Document):
        for term, count in doc.tf.items():
            self.df[term] = self.df.get(term, 0) + 1
            self.summary_tf[term] = self.summary_tf.get(term, 0) + count
        self.sum_dl += doc.dl

    def _remove(self, doc: Document):
        for term, count in doc.tf.items():
            df = self.df[term] - 1
            if df > 0:
                self.df[term] = df
            else:
                del self.df[term]
            total = self.summary_tf[term] - count
            if total > 0:
                self.summary_tf[term] = total
            else:
                del self.summary_tf[term]
        self.sum_dl -= doc.dl

    def _avdl(self) -> float:
        # 1 for an empty window keeps BM25 and pivot formulas total
        return self.sum_dl / len(self.docs) if self.docs else 1.0

    def stats(self) -> CollectionStats:
        """Immutable copy, safe to read while the window keeps moving."""
        return CollectionStats(
            N=len(self.docs), avdl=self._avdl(), df=MappingProxyType(dict(self.df))
        )

    def live_stats(self) -> CollectionStats:
        """O(1) read-only view over the current DF table.

        Only valid until the next ``push``.
        """
        return CollectionStats(
            N=len(self.docs), avdl=self._avdl(), df=MappingProxyType(self.df)
        )

    def summary_document(self) -> Document:
        return Document(id=SUMMARY_DOC_ID, timestamp=-1, tf=dict(self.summary_tf))
