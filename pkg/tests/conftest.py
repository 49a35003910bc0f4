from collections import Counter

import numpy as np
import pytest

from novelty_tdf.config import WeightingScheme
from novelty_tdf.text_pipeline import Document


def make_doc(terms, id=None, timestamp=0) -> Document:
    """Document from a term list or a term->count mapping."""
    tf = dict(terms) if isinstance(terms, dict) else dict(Counter(terms))
    return Document(id=id if id is not None else f"d{timestamp}", timestamp=timestamp, tf=tf)


def random_docs(rng: np.random.Generator, n_docs: int, vocab_size: int, max_len=30):
    """Docs with Zipf-ish term draws over t0..t{vocab_size-1}."""
    ranks = np.arange(1, vocab_size + 1)
    probs = (1 / ranks) / np.sum(1 / ranks)
    docs = []
    for i in range(n_docs):
        length = int(rng.integers(1, max_len + 1))
        terms = rng.choice(vocab_size, size=length, p=probs)
        docs.append(make_doc([f"t{term}" for term in terms], id=f"d{i}", timestamp=i))
    return docs


@pytest.fixture
def nsd():
    return WeightingScheme.from_smart("nsd")


@pytest.fixture
def kbn():
    return WeightingScheme.from_smart("kbn")


@pytest.fixture
def rng():
    return np.random.default_rng(seed=42)
