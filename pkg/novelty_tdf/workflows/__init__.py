from novelty_tdf.workflows.base import BaseWorkflow
from novelty_tdf.workflows.bench import BenchWorkflow
from novelty_tdf.workflows.evaluate import EvaluateWorkflow
from novelty_tdf.workflows.score import ScoreWorkflow
from novelty_tdf.workflows.sweep import SweepWorkflow
from novelty_tdf.workflows.synth import SynthWorkflow

__all__ = [
    "BaseWorkflow",
    "BenchWorkflow",
    "EvaluateWorkflow",
    "ScoreWorkflow",
    "SweepWorkflow",
    "SynthWorkflow",
]
