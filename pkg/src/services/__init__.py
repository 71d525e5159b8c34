"""Service layer: the pipelines behind each CLI subcommand."""

from .centralized import centralized_epochs, train_centralized
from .evaluation import EvaluationRow, evaluate_checkpoints, format_rows
from .experiment import ExperimentResult, run_experiment
from .gradcheck import GRADCHECK_ARCHITECTURES, GradcheckResult, run_gradcheck
from .pipeline import PreparedData, generate_trips, prepare_data

__all__ = [
    "GRADCHECK_ARCHITECTURES",
    "EvaluationRow",
    "ExperimentResult",
    "GradcheckResult",
    "PreparedData",
    "centralized_epochs",
    "evaluate_checkpoints",
    "format_rows",
    "generate_trips",
    "prepare_data",
    "run_experiment",
    "run_gradcheck",
    "train_centralized",
]
