"""Argument helpers shared by the subcommands."""

import argparse
from pathlib import Path

from rich_argparse import RichHelpFormatter

from novelty_tdf.env import (
    DECAY_EXP1,
    DECAY_EXP2,
    DECAY_LINEAR,
    DECAY_SIGMOID,
    DEFAULT_FNAME_BENCH,
    DEFAULT_FNAME_GRID,
    DEFAULT_FNAME_SCORES,
    DEFAULT_FNAME_STREAM,
    FIELD_CONTENT_ONLY,
    FIELD_TITLE_SNIPPET,
    SCORER_AGG_CS,
    SCORER_MAX_CS,
    SCORER_MEAN_CS,
    SCORER_MIN_KL,
    SCORER_NS,
    SCORER_NS_T,
)
from novelty_tdf.logger import VERBOSITY_TO_LOG_LEVEL_MAP

PROGRAM_NAME = "novelty-tdf"
SCORERS = [
    SCORER_NS,
    SCORER_NS_T,
    SCORER_MAX_CS,
    SCORER_MEAN_CS,
    SCORER_MIN_KL,
    SCORER_AGG_CS,
]
DECAYS = [DECAY_LINEAR, DECAY_EXP1, DECAY_EXP2, DECAY_SIGMOID]

HELPTEXT = """
Streaming novelty detection. Documents are scored one by one against a window
of the last N documents (or a decayed term-frequency index) before being added
to it. Score files can then be evaluated with detection costs and DET curves.
"""


def add_arg_config(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--config",
        type=Path,
        dest="fpath_config",
        help="KEY = value config file; its values override command-line flags",
    )


def add_arg_dry_run(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="compute everything but do not write output files",
    )


def add_arg_verbosity(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--verbosity",
        type=int,
        default=2,
        choices=sorted(VERBOSITY_TO_LOG_LEVEL_MAP),
        help="0 (errors only), 1 (warnings), 2 (info, default), 3 (debug)",
    )


def add_arg_logfile(parser: argparse.ArgumentParser):
    parser.add_argument("--logfile", type=Path, help="also write the log to this file")


def add_common_args(parser: argparse.ArgumentParser):
    add_arg_config(parser)
    add_arg_dry_run(parser)
    add_arg_verbosity(parser)
    add_arg_logfile(parser)


def add_run_config_args(parser: argparse.ArgumentParser):
    """Flags mirroring RunConfig fields; unset flags keep the config defaults."""
    group = parser.add_argument_group("run configuration")
    group.add_argument("--scorer", dest="SCORER", choices=SCORERS)
    group.add_argument("--scheme", dest="SCHEME", help="SMART code, e.g. nsd")
    group.add_argument(
        "--baseline-scheme",
        dest="BASELINE_SCHEME",
        help="SMART code for the cosine baselines (default: kbn)",
    )
    group.add_argument("--window", "-N", dest="N", type=int, help="window length")
    group.add_argument("--decay", dest="DECAY", choices=DECAYS)
    group.add_argument("--alpha", dest="ALPHA", type=float, help="decay rate")
    group.add_argument(
        "--lambda", dest="LAMBDA", type=float, help="language model smoothing"
    )
    group.add_argument("--k1", dest="K1", type=float)
    group.add_argument("--b", dest="B", type=float)
    group.add_argument(
        "--field", dest="FIELD", choices=[FIELD_TITLE_SNIPPET, FIELD_CONTENT_ONLY]
    )
    group.add_argument("--warmup", dest="WARMUP", choices=["include", "exclude"])
    group.add_argument("--folds", dest="FOLDS", type=int)
    group.add_argument("--shuffle", dest="SHUFFLE", action="store_true", default=None)
    group.add_argument("--seed", dest="SEED", type=int)
    group.add_argument(
        "--include-empty", dest="INCLUDE_EMPTY", action="store_true", default=None
    )
    group.add_argument(
        "--mixed-clusters",
        dest="MIXED_CLUSTERS",
        help="comma-separated cluster ids left out of evaluation",
    )
    group.add_argument("--min-cluster-size", dest="MIN_CLUSTER_SIZE", type=int)
    group.add_argument("--stopwords", dest="STOPWORDS", type=Path)
    group.add_argument("--purge-every", dest="PURGE_EVERY", type=int)
    group.add_argument(
        "--no-timing",
        dest="TIMING",
        action="store_false",
        default=None,
        help="write elapsed_ns = 0 so reruns are byte-identical",
    )


def add_grid_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("grid")
    group.add_argument("--scorers", dest="SCORERS", help="comma-separated scorers")
    group.add_argument("--schemes", dest="SCHEMES", help="comma-separated SMART codes")
    group.add_argument("--windows", dest="WINDOWS", help="comma-separated N values")
    group.add_argument("--decays", dest="DECAYS", help="comma-separated decays")
    group.add_argument("--alphas", dest="ALPHAS", help="comma-separated alphas")
    group.add_argument("--n-jobs", dest="N_JOBS", type=int)


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROGRAM_NAME, description=HELPTEXT, formatter_class=RichHelpFormatter
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    parser_score = subparsers.add_parser(
        "score", help="score a JSON-lines stream", formatter_class=RichHelpFormatter
    )
    parser_score.add_argument("stream", type=Path, help="input JSON-lines stream")
    parser_score.add_argument(
        "--out", type=Path, default=Path(DEFAULT_FNAME_SCORES), help="score TSV"
    )
    parser_score.add_argument("--tdf-in", type=Path, help="resume from a tDF snapshot")
    parser_score.add_argument("--tdf-out", type=Path, help="write the final tDF snapshot")
    add_run_config_args(parser_score)
    add_common_args(parser_score)

    parser_evaluate = subparsers.add_parser(
        "evaluate",
        help="detection costs and DET curves for a score file",
        formatter_class=RichHelpFormatter,
    )
    parser_evaluate.add_argument("scores", type=Path, help="score TSV")
    parser_evaluate.add_argument(
        "stream", type=Path, help="stream the scores came from (for cluster ids)"
    )
    parser_evaluate.add_argument(
        "--out-dir", type=Path, default=Path("."), help="directory for DET/cost files"
    )
    add_run_config_args(parser_evaluate)
    add_common_args(parser_evaluate)

    parser_sweep = subparsers.add_parser(
        "sweep",
        help="cross-validated cost over a parameter grid",
        formatter_class=RichHelpFormatter,
    )
    parser_sweep.add_argument("stream", type=Path, help="input JSON-lines stream")
    parser_sweep.add_argument(
        "--out", type=Path, default=Path(DEFAULT_FNAME_GRID), help="cost-grid CSV"
    )
    add_grid_args(parser_sweep)
    add_run_config_args(parser_sweep)
    add_common_args(parser_sweep)

    parser_bench = subparsers.add_parser(
        "bench", help="per-document scoring time", formatter_class=RichHelpFormatter
    )
    parser_bench.add_argument(
        "stream",
        type=Path,
        nargs="?",
        help="input JSON-lines stream (default: synthetic content-length documents)",
    )
    parser_bench.add_argument(
        "--out", type=Path, default=Path(DEFAULT_FNAME_BENCH), help="timing TSV"
    )
    parser_bench.add_argument("--repetitions", type=int, default=3)
    parser_bench.add_argument("--n-docs", type=int, help="only time the first documents")
    add_grid_args(parser_bench)
    add_run_config_args(parser_bench)
    add_common_args(parser_bench)

    parser_synth = subparsers.add_parser(
        "synth", help="generate a labelled stream", formatter_class=RichHelpFormatter
    )
    parser_synth.add_argument(
        "--out", type=Path, default=Path(DEFAULT_FNAME_STREAM), help="output JSON lines"
    )
    parser_synth.add_argument("--seed", type=int, default=0)
    parser_synth.add_argument("--n-clusters", type=int, default=100)
    parser_synth.add_argument("--mean-cluster-size", type=float, default=5.0)
    parser_synth.add_argument("--topic-vocab-size", type=int, default=10)
    parser_synth.add_argument("--background-vocab-size", type=int, default=15)
    parser_synth.add_argument("--background-fraction", type=float, default=0.3)
    parser_synth.add_argument("--mean-length", type=float, default=27.0)
    parser_synth.add_argument("--length-sigma", type=float, default=0.0)
    parser_synth.add_argument("--overlap", type=float, default=0.0)
    add_arg_dry_run(parser_synth)
    add_arg_verbosity(parser_synth)
    add_arg_logfile(parser_synth)

    return parser
