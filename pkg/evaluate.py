# Privacy evaluation script
"""Checks the closed-form privacy claims against simulation.

Three tables are printed:

* two-stage guessing: Monte Carlo success rate vs ``1/(k*l*n)``
* passive collusion: observed success rate vs the posterior's own prediction
* secretary load: mean measured load vs ``c*k/n``
"""

from __future__ import annotations

import argparse
import logging
import math
from statistics import fmean
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from adversary.attacks import passive_collusion_attack
from adversary.montecarlo import DEFAULT_BATCH, simulate_two_stage_guess
from privacy_analysis.load import load_report
from privacy_analysis.metrics import expected_load, guess_prob_advanced
from secretaries.config import Settings
from secretaries.generators import random_network

GUESS_GRID: Sequence[Tuple[int, int, int]] = ((5, 2, 1), (10, 5, 1), (20, 5, 1), (50, 10, 1), (20, 5, 2))


def evaluate_guessing(
    grid: Iterable[Tuple[int, int, int]] = GUESS_GRID,
    trials: int = 100_000,
    seeds: Iterable[int] = range(5),
    batch: int = DEFAULT_BATCH,
) -> List[Dict[str, float]]:
    rows = []
    seeds = list(seeds)
    for n, k, l in grid:
        expected = guess_prob_advanced(n, k, l)
        for seed in seeds:
            observed = simulate_two_stage_guess(n, k, trials, seed, l=l, batch=batch)
            rows.append(
                {"n": n, "k": k, "l": l, "seed": seed, "expected": expected, "observed": observed, "error": abs(observed - expected)}
            )
    return rows


def evaluate_collusion(
    seeds: Iterable[int] = range(50),
    users: int = 10,
    snodes: int = 8,
    types: int = 4,
    per_type_connections: float = 1.0,
    coalition_size: int = 2,
    settings: Optional[Settings] = None,
) -> Dict[str, float]:
    """Pool a coalition attack over many random graphs.

    ``sigma`` is the standard deviation of the pooled success rate if every
    edge is an independent Bernoulli trial with the posterior's probability.
    """
    settings = settings or Settings()
    successes = 0.0
    expected = 0.0
    variance = 0.0
    edges = 0
    for seed in seeds:
        graph = random_network(users, snodes, types, per_type_connections, seed)
        coalition = sorted(graph.users)[:coalition_size]
        report = passive_collusion_attack(
            graph, coalition, seed, settings.exact_limit, enumeration_cap=settings.enumeration_cap
        )
        count = len(report.per_edge)
        edges += count
        successes += report.success_rate * count
        for result in report.per_edge:
            p = result.posterior[result.guess]
            expected += p
            variance += p * (1 - p)
    if not edges:
        return {"edges": 0, "success_rate": 0.0, "expected_success": 0.0, "sigma": 0.0}
    return {
        "edges": edges,
        "success_rate": successes / edges,
        "expected_success": expected / edges,
        "sigma": math.sqrt(variance) / edges,
    }


def evaluate_load(
    seeds: Iterable[int] = range(20),
    users: int = 50,
    snodes: int = 25,
    types: int = 5,
    per_type_connections: float = 10.0,
) -> Dict[str, float]:
    means = []
    worst = 0
    for seed in seeds:
        report = load_report(random_network(users, snodes, types, per_type_connections, seed))
        means.append(report.overall.mean)
        worst = max(worst, report.worst_group_spread)
    return {
        "expected": expected_load(per_type_connections, types, snodes),
        "observed": fmean(means),
        "worst_group_spread": worst,
    }


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Compare simulated privacy figures with their closed forms.")
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seeds", type=int, default=5, help="Seeds per guessing grid point.")
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING)
    settings = Settings.from_env()

    print("two-stage guessing (n, k, l, seed): observed vs expected")
    for row in evaluate_guessing(trials=args.trials, seeds=range(args.seeds), batch=settings.montecarlo_batch):
        print(f"  ({row['n']}, {row['k']}, {row['l']}, {row['seed']}): {row['observed']:.5f} vs {row['expected']:.5f}")

    collusion = evaluate_collusion(settings=settings)
    print(
        f"passive collusion over {collusion['edges']} edges: success {collusion['success_rate']:.4f}, "
        f"predicted {collusion['expected_success']:.4f} (sigma {collusion['sigma']:.4f})"
    )

    load = evaluate_load()
    print(
        f"secretary load: observed mean {load['observed']:.3f}, expected {load['expected']:.3f}, "
        f"worst in-group spread {load['worst_group_spread']}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
