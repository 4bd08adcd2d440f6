"""Monte Carlo check of the two-stage guessing argument.

Trials run in fixed-size batches; batch ``i`` draws from a generator seeded
with ``(seed, i)``, so batches are independent and the result does not
depend on how they are scheduled.
"""

from __future__ import annotations

import numpy as np

from privacy_analysis.metrics import guess_prob_naive
from secretaries.errors import DomainError
from secretaries.rng import make_rng

DEFAULT_BATCH = 10_000


def simulate_two_stage_guess(n: int, k: int, trials: int, seed: int, l: int = 1, batch: int = DEFAULT_BATCH) -> float:
    """Fraction of trials where both the type-count guess and the job guess succeed.

    Stage one guesses ``k`` uniformly on ``1..n``; stage two guesses the true
    job among ``k * l`` groups.
    """
    guess_prob_naive(n, k)
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    if isinstance(l, bool) or not isinstance(l, int) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    if isinstance(batch, bool) or not isinstance(batch, int) or batch < 1:
        raise DomainError(f"batch must be a positive integer, got {batch!r}")
    kinds = k * l
    successes = 0
    for index, start in enumerate(range(0, trials, batch)):
        size = min(batch, trials - start)
        rng = make_rng(seed, index)
        count_guess = rng.integers(1, n + 1, size)
        truth = rng.integers(0, kinds, size)
        job_guess = rng.integers(0, kinds, size)
        successes += int(np.count_nonzero((count_guess == k) & (job_guess == truth)))
    return successes / trials
