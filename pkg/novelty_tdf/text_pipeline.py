"""Raw text to bag-of-words documents."""

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from nltk.stem.porter import PorterStemmer

from novelty_tdf.env import DEFAULT_FNAME_STOPWORDS, DPATH_DATA

# alphanumeric runs, any script; underscore counts as a delimiter
RE_TOKEN = re.compile(r"[^\W_]+")

_STEMMER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@dataclass(frozen=True)
class Document:
    """Timestamped bag of words.

    Parameters
    ----------
    id : str
        Opaque document identifier
    timestamp : int
        Stream position (or epoch seconds)
    tf : dict[str, int]
        Term counts, every count >= 1
    """

    id: str
    timestamp: int
    tf: dict[str, int]
    dl: int = field(init=False)
    uniq: int = field(init=False)

    def __post_init__(self):
        if any(count < 1 for count in self.tf.values()):
            raise ValueError(f"Document {self.id} has non-positive term counts")
        object.__setattr__(self, "dl", sum(self.tf.values()))
        object.__setattr__(self, "uniq", len(self.tf))

    @property
    def zero_length(self) -> bool:
        return self.uniq == 0


def tokenize(raw: Optional[str]) -> list[str]:
    if not raw:
        return []
    return RE_TOKEN.findall(raw.lower())


def remove_stopwords(tokens: Iterable[str], stoplist: frozenset | set) -> list[str]:
    return [token for token in tokens if token not in stoplist]


@lru_cache(maxsize=1 << 16)
def porter_stem(token: str) -> str:
    return _STEMMER.stem(token, to_lowercase=False)


def load_stoplist(fpath: Optional[Path | str] = None) -> frozenset[str]:
    """Read a stopword file (one token per line, '#' comments).

    Loads the bundled English list when no path is given.
    """
    if fpath is None:
        text = (
            resources.files("novelty_tdf")
            .joinpath(DPATH_DATA, DEFAULT_FNAME_STOPWORDS)
            .read_text(encoding="utf-8")
        )
    else:
        fpath = Path(fpath)
        if not fpath.exists():
            raise FileNotFoundError(f"Stopword file {fpath} does not exist")
        text = fpath.read_text(encoding="utf-8")

    stoplist = set()
    for line in text.splitlines():
        line = line.strip()
        if line == "" or line.startswith("#"):
            continue
        stoplist.add(line.lower())
    return frozenset(stoplist)


def build_document(
    id: str, timestamp: int, raw: Optional[str], stoplist: frozenset | set
) -> Document:
    """Tokenize, drop stopwords, stem and count.

    Stopwords are matched on surface forms, before stemming.
    """
    tokens = remove_stopwords(tokenize(raw), stoplist)
    return Document(id=id, timestamp=timestamp, tf=dict(Counter(map(porter_stem, tokens))))
