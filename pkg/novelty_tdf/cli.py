"""Command-line entry point."""

import sys
from typing import Optional, Sequence

from novelty_tdf.config import GridConfig, RunConfig, merge_config_sources
from novelty_tdf.logger import VERBOSITY_TO_LOG_LEVEL_MAP, add_logfile, capture_warnings
from novelty_tdf.parser import get_parser
from novelty_tdf.synthetic import SyntheticParams
from novelty_tdf.workflows import (
    BaseWorkflow,
    BenchWorkflow,
    EvaluateWorkflow,
    ScoreWorkflow,
    SweepWorkflow,
    SynthWorkflow,
)


def _run_config(args) -> RunConfig:
    cli_values = {key: getattr(args, key, None) for key in RunConfig.model_fields}
    return RunConfig.from_sources(cli_values, getattr(args, "fpath_config", None))


def _grid_config(args) -> GridConfig:
    cli_values = {key: getattr(args, key, None) for key in GridConfig.model_fields}
    return GridConfig(
        **merge_config_sources(cli_values, getattr(args, "fpath_config", None), GridConfig)
    )


def build_workflow(args) -> BaseWorkflow:
    common = {"dry_run": args.dry_run}
    if args.command == "score":
        return ScoreWorkflow(
            fpath_stream=args.stream,
            fpath_out=args.out,
            config=_run_config(args),
            fpath_tdf_in=args.tdf_in,
            fpath_tdf_out=args.tdf_out,
            **common,
        )
    if args.command == "evaluate":
        return EvaluateWorkflow(
            fpath_scores=args.scores,
            fpath_stream=args.stream,
            dpath_out=args.out_dir,
            config=_run_config(args),
            **common,
        )
    if args.command == "sweep":
        return SweepWorkflow(
            fpath_stream=args.stream,
            fpath_out=args.out,
            config=_run_config(args),
            grid=_grid_config(args),
            **common,
        )
    if args.command == "bench":
        grid = _grid_config(args)
        kwargs = {}
        if args.SCORERS is not None:
            kwargs["scorers"] = grid.SCORERS
        if args.WINDOWS is not None:
            kwargs["windows"] = grid.WINDOWS
        return BenchWorkflow(
            fpath_out=args.out,
            fpath_stream=args.stream,
            repetitions=args.repetitions,
            n_docs=args.n_docs,
            config=_run_config(args),
            **kwargs,
            **common,
        )
    if args.command == "synth":
        params = SyntheticParams(
            n_clusters=args.n_clusters,
            mean_cluster_size=args.mean_cluster_size,
            topic_vocab_size=args.topic_vocab_size,
            background_vocab_size=args.background_vocab_size,
            background_fraction=args.background_fraction,
            mean_length=args.mean_length,
            length_sigma=args.length_sigma,
            overlap=args.overlap,
        )
        return SynthWorkflow(
            fpath_out=args.out, seed=args.seed, params=params, **common
        )
    raise ValueError(f"Unknown command: {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = get_parser()
    args = parser.parse_args(argv)

    try:
        workflow = build_workflow(args)
    except (ValueError, FileNotFoundError) as exception:
        # pydantic ValidationError is a ValueError
        parser.error(str(exception))
    workflow.logger.setLevel(VERBOSITY_TO_LOG_LEVEL_MAP[args.verbosity])
    if args.logfile is not None:
        add_logfile(workflow.logger, args.logfile)

    capture_warnings(workflow.logger)

    try:
        workflow.run()
    except Exception:
        workflow.logger.exception(f"An error occurred while running {args.command}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
