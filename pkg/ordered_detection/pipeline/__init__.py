# Pipeline module
from .experiment_runner import ExperimentRunner, RunSummary, run

__all__ = ['ExperimentRunner', 'RunSummary', 'run']
