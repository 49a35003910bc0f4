"""Error kinds raised by the scoring and evaluation modules."""


class NoveltyError(Exception):
    """Base class for all package errors."""


class DegenerateFrequency(NoveltyError, ValueError):
    """Unsmoothed IDF evaluated where its logarithm is undefined."""


class ZeroNorm(NoveltyError, ValueError):
    """Length normalization requested for an empty document."""


class DeltaOutOfRange(NoveltyError, ValueError):
    """Decay factor requested outside of [1, N]."""


class EmptyModel(NoveltyError, ValueError):
    """Language model requested with no document and no corpus counts."""


class ZeroProbability(NoveltyError, ValueError):
    """KL divergence hit a zero probability in the reference model."""


class NoTargets(NoveltyError, RuntimeError):
    """No novel documents among the evaluated records."""


class NoNonTargets(NoveltyError, RuntimeError):
    """No non-novel documents among the evaluated records."""


class FoldTooSmall(NoveltyError, RuntimeError):
    """A cross-validation fold lacks one of the two classes."""
