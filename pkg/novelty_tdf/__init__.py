"""Streaming novelty detection with temporal document frequency."""

try:
    from novelty_tdf._version import __version__
except ImportError:  # not built with hatch-vcs
    __version__ = "0.0.0"
