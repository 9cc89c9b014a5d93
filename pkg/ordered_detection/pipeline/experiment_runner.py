"""
Experiment Runner

Runs one validated experiment config end to end:
1. Build policy, size model and threshold rule
2. Sweep the nu grid (quadrature or Monte Carlo)
3. Write the result CSV, optional companion CSVs, and a JSON manifest

Rows computed before a numeric failure are still written, and the manifest
records the failure.
"""
import json
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import scipy

from .. import __version__
from ..config.experiment_config import ExperimentConfig
from ..dists.laws import Hypothesis
from ..errors import NumericFailureError
from ..simulation.sweep import SWEEP_COLUMNS, iter_sweep
from ..utilities.logger import get_logger

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = '%.12g'


@dataclass
class RunSummary:
    """Outcome of one experiment run."""
    scenario: str
    status: str                     # ok | numeric_failure
    rows: int
    files: List[str] = field(default_factory=list)
    wall_time_s: float = 0.0
    error: Optional[str] = None


def write_table(rows: List[Dict], columns: List[str], path: Path) -> Path:
    """Write rows as CSV: header, comma separated, 12 significant digits, NaN as empty."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(rows, columns=columns)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
    return path


def package_versions() -> Dict[str, str]:
    versions = {
        'ordered_detection': __version__,
        'python': platform.python_version(),
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
    }
    try:
        versions['python-dotenv'] = version('python-dotenv')
    except PackageNotFoundError:
        versions['python-dotenv'] = 'unknown'
    return versions


class ExperimentRunner:
    """
    Runs an ExperimentConfig and saves its outputs.

    Output files share the config's output prefix:
        <prefix>.csv               main sweep
        <prefix>_theoretical.csv   deterministic-N quadrature series (companion=true)
        <prefix>_sizes.csv         mean N / nu per hypothesis (energy-stopped sizing)
        <prefix>_manifest.json     resolved config, seed, versions, timings
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.prefix = Path(config.output)
        self.policy = config.build_policy()
        self.size_model = config.build_size_model()
        self.rule = config.build_rule()

    def _path(self, suffix: str) -> Path:
        return self.prefix.parent / f"{self.prefix.name}{suffix}"

    def _sweep_rows(self, size_model, method: str, rows: List[Dict], clock_delta: float):
        """Append sweep rows to rows as they arrive (so a failure keeps them)."""
        cfg = self.config
        for row in iter_sweep(
            self.policy, size_model, cfg.nu_grid, self.rule,
            clock_delta=clock_delta, trials=cfg.trials, seed=cfg.seed,
            workers=cfg.workers, method=method,
        ):
            rows.append(row)

    def _size_rows(self, rows: List[Dict]) -> List[Dict]:
        limits = {h: self.size_model.limit_law(h).mean() for h in Hypothesis}
        return [
            {
                'nu': row['nu'],
                'mean_n_over_nu_h0': row['mean_size_h0'] / row['nu'],
                'mean_n_over_nu_h1': row['mean_size_h1'] / row['nu'],
                'limit_h0': limits[Hypothesis.H0],
                'limit_h1': limits[Hypothesis.H1],
            }
            for row in rows
        ]

    def _save_manifest(self, summary: RunSummary, started: datetime, finished: datetime) -> Path:
        path = self._path('_manifest.json')
        path.parent.mkdir(parents=True, exist_ok=True)
        manifest = {
            'scenario': self.config.scenario,
            'status': summary.status,
            'error': summary.error,
            'seed': self.config.seed,
            'config': self.config.to_dict(),
            'policy': self.policy.describe(),
            'size_model': self.size_model.describe(),
            'versions': package_versions(),
            'started_at': started.isoformat(),
            'finished_at': finished.isoformat(),
            'wall_time_s': summary.wall_time_s,
            'rows': summary.rows,
            'files': summary.files,
        }
        with open(path, 'w') as f:
            json.dump(manifest, f, indent=2, default=str)
        return path

    def run(self) -> RunSummary:
        """
        Run the experiment.

        Returns:
            RunSummary

        Raises:
            NumericFailureError: After partial outputs and the manifest are written
        """
        cfg = self.config
        started = datetime.now(timezone.utc)
        clock = time.perf_counter()
        logger.info(f"Running {cfg.scenario}: policy={cfg.policy}, size={cfg.size_model}, "
                    f"threshold={cfg.threshold}, nu_grid={cfg.nu_grid}")

        rows: List[Dict] = []
        companion_rows: List[Dict] = []
        summary = RunSummary(scenario=cfg.scenario, status='ok', rows=0)
        failure: Optional[NumericFailureError] = None

        try:
            self._sweep_rows(self.size_model, cfg.method, rows, cfg.clock_delta)
            if cfg.companion:
                # reference curve: synchronized clocks, deterministic N
                theoretical = cfg.build_companion_model()
                self._sweep_rows(theoretical, 'quadrature', companion_rows, 0.0)
        except NumericFailureError as e:
            logger.error(f"Numeric failure after {len(rows)} rows: {e}")
            summary.status, summary.error, failure = 'numeric_failure', str(e), e

        summary.files.append(str(write_table(rows, SWEEP_COLUMNS, self._path('.csv'))))
        if cfg.companion:
            summary.files.append(str(write_table(companion_rows, SWEEP_COLUMNS, self._path('_theoretical.csv'))))
        if cfg.size_model == 'energy_stopped':
            size_columns = ['nu', 'mean_n_over_nu_h0', 'mean_n_over_nu_h1', 'limit_h0', 'limit_h1']
            summary.files.append(str(write_table(self._size_rows(rows), size_columns, self._path('_sizes.csv'))))

        summary.rows = len(rows)
        summary.wall_time_s = time.perf_counter() - clock
        manifest = self._save_manifest(summary, started, datetime.now(timezone.utc))
        summary.files.append(str(manifest))

        for path in summary.files:
            logger.info(f"Saved {path}")
        if failure is not None:
            raise failure
        return summary


def run(config: ExperimentConfig) -> RunSummary:
    return ExperimentRunner(config).run()
