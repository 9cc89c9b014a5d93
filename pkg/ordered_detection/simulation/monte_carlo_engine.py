"""
Monte Carlo Engine

Estimates false alarm and miss probabilities by simulating whole networks
under each hypothesis and counting wrong decisions.

Trials are grouped into blocks. A block's size depends only on the size
model, and its random stream is SeedSequence([seed, hypothesis, stream, block]),
so results do not depend on the number of workers.

Usage:
    with MonteCarloEngine(workers=4) as engine:
        estimate = engine.estimate(policy, deterministic(10), threshold=0.0, trials=10**6, seed=7)
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import stats

from ..config.settings import (
    CONFIDENCE_LEVEL, DEFAULT_TRIALS, MAX_BLOCK_SAMPLES, MAX_BLOCK_TRIALS, MC_WORKERS,
)
from ..dists.laws import Hypothesis
from ..errors import InvalidParameterError
from ..network.size_models import (
    SizeModel, clock_offsets, draw_network, draw_sizes,
)
from ..policy.decision import decide_batch
from ..policy.transmission import Policy
from ..utilities.logger import get_logger

logger = get_logger(__name__)


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE_LEVEL) -> Tuple[float, float]:
    """Wilson score interval for a Bernoulli proportion."""
    if trials <= 0:
        return (0.0, 1.0)
    z = stats.norm.ppf(0.5 + confidence / 2)
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    margin = z * np.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    return (max(0.0, center - margin), min(1.0, center + margin))


def wilson_halfwidth(successes: int, trials: int, confidence: float = CONFIDENCE_LEVEL) -> float:
    lo, hi = wilson_interval(successes, trials, confidence)
    return (hi - lo) / 2


@dataclass
class ErrorEstimate:
    """Monte Carlo estimate of (alpha, beta)."""
    alpha_hat: float
    beta_hat: float
    alpha_halfwidth: float
    beta_halfwidth: float
    trials: int                     # per hypothesis
    all_censored_fraction: float    # over both hypotheses
    seed: int
    alpha_errors: int = 0
    beta_errors: int = 0
    mean_size_h0: float = 0.0
    mean_size_h1: float = 0.0

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class BlockCounts:
    """Integer tallies for one block of trials under one hypothesis."""
    trials: int = 0
    errors: int = 0
    censored: int = 0
    size_sum: int = 0

    def __add__(self, other: 'BlockCounts') -> 'BlockCounts':
        return BlockCounts(
            trials=self.trials + other.trials,
            errors=self.errors + other.errors,
            censored=self.censored + other.censored,
            size_sum=self.size_sum + other.size_sum,
        )


@dataclass
class BlockTask:
    """Everything a worker needs to simulate one block."""
    policy: Policy
    model: SizeModel
    hypothesis: Hypothesis
    threshold: float
    clock_delta: float
    trials: int
    seed: int
    stream: int
    block: int

    def rng(self) -> np.random.Generator:
        sequence = np.random.SeedSequence([self.seed, int(self.hypothesis), self.stream, self.block])
        return np.random.default_rng(sequence)


def block_size(model: SizeModel) -> int:
    """Trials per block: bounded by MAX_BLOCK_TRIALS and by MAX_BLOCK_SAMPLES sensor draws."""
    expected = max(model.expected_size(h) for h in Hypothesis)
    per_trial = max(1, int(np.ceil(expected)))
    return int(max(1, min(MAX_BLOCK_TRIALS, MAX_BLOCK_SAMPLES // per_trial)))


def _simulate_block(task: BlockTask) -> BlockCounts:
    rng = task.rng()
    h = task.hypothesis

    if task.model.is_data_independent:
        sizes = draw_sizes(task.model, h, rng, task.trials)
        x = np.asarray(task.policy.x_law(h).sample(rng, int(sizes.sum())), dtype=float)
        z = np.asarray(task.policy.transform(x), dtype=float)
        offsets = clock_offsets(task.clock_delta, z.size, rng)
    else:
        draws = [draw_network(task.model, task.policy, h, None, task.clock_delta, rng)
                 for _ in range(task.trials)]
        sizes = np.array([d.n_active for d in draws], dtype=np.int64)
        z = np.concatenate([d.z_samples for d in draws])
        offsets = None if task.clock_delta == 0 else np.concatenate([d.offsets for d in draws])

    decisions = decide_batch(z, sizes, task.threshold, offsets)
    wrong = decisions.decide_h1 if h == Hypothesis.H0 else ~decisions.decide_h1

    return BlockCounts(
        trials=task.trials,
        errors=int(wrong.sum()),
        censored=int(decisions.all_censored.sum()),
        size_sum=int(sizes.sum()),
    )


class MonteCarloEngine:
    """
    Runs error-probability simulations, serially or over a process pool.

    The pool is created on entering the context and shut down on exit; an
    engine used outside a context runs serially.
    """

    def __init__(self, workers: Optional[int] = None):
        self.workers = max(1, int(workers if workers is not None else MC_WORKERS))
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> 'MonteCarloEngine':
        if self.workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.workers)
        return self

    def __exit__(self, exc_type, exc, tb):
        if self._executor is not None:
            self._executor.shutdown(wait=True)
            self._executor = None

    def _run(self, tasks: List[BlockTask]) -> BlockCounts:
        if self._executor is None or len(tasks) == 1:
            results: Iterable[BlockCounts] = map(_simulate_block, tasks)
        else:
            results = self._executor.map(_simulate_block, tasks)
        total = BlockCounts()
        for counts in results:
            total = total + counts
        return total

    def _tasks(self, policy, model, h, threshold, clock_delta, trials, seed, stream) -> List[BlockTask]:
        size = block_size(model)
        tasks = []
        for block, start in enumerate(range(0, trials, size)):
            tasks.append(BlockTask(
                policy=policy, model=model, hypothesis=h, threshold=threshold,
                clock_delta=clock_delta, trials=min(size, trials - start),
                seed=seed, stream=stream, block=block,
            ))
        return tasks

    def estimate(
        self,
        policy: Policy,
        size_model: SizeModel,
        threshold: float,
        clock_delta: float = 0.0,
        trials: int = DEFAULT_TRIALS,
        seed: int = 0,
        stream: int = 0,
    ) -> ErrorEstimate:
        """
        Estimate (alpha, beta) at a fixed threshold.

        Args:
            policy: Transmission policy
            size_model: Network size model
            threshold: Decide H1 iff M >= threshold
            clock_delta: Clock-offset width (0 for synchronized sensors)
            trials: Networks simulated under each hypothesis
            seed: Master seed
            stream: Extra seed component separating grid points of a sweep

        Returns:
            ErrorEstimate
        """
        if int(trials) != trials or trials < 1:
            raise InvalidParameterError(f"trials must be an integer >= 1, got {trials}")
        if clock_delta < 0:
            raise InvalidParameterError(f"clock_delta must be >= 0, got {clock_delta}")
        trials = int(trials)

        counts = {
            h: self._run(self._tasks(policy, size_model, h, threshold, clock_delta, trials, seed, stream))
            for h in Hypothesis
        }
        h0, h1 = counts[Hypothesis.H0], counts[Hypothesis.H1]

        estimate = ErrorEstimate(
            alpha_hat=h0.errors / trials,
            beta_hat=h1.errors / trials,
            alpha_halfwidth=wilson_halfwidth(h0.errors, trials),
            beta_halfwidth=wilson_halfwidth(h1.errors, trials),
            trials=trials,
            all_censored_fraction=(h0.censored + h1.censored) / (2 * trials),
            seed=seed,
            alpha_errors=h0.errors,
            beta_errors=h1.errors,
            mean_size_h0=h0.size_sum / trials,
            mean_size_h1=h1.size_sum / trials,
        )
        logger.debug(
            f"MC {size_model.name} nu={size_model.nu:g} gamma={threshold:.6g}: "
            f"alpha={estimate.alpha_hat:.6g} beta={estimate.beta_hat:.6g} ({trials} trials)"
        )
        return estimate


def estimate_errors(
    policy: Policy,
    size_model: SizeModel,
    threshold: float,
    clock_delta: float = 0.0,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: Optional[int] = None,
) -> ErrorEstimate:
    """One-off estimate; see MonteCarloEngine.estimate."""
    with MonteCarloEngine(workers) as engine:
        return engine.estimate(policy, size_model, threshold, clock_delta, trials, seed)
