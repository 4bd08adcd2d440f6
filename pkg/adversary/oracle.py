"""Brute-force and sampled posteriors for the private type behind one edge.

The unknown is the assignment of the target's snodes to type labels with the
hypothesised sizes. Every assignment that agrees with the pinned (learned)
snodes is equally likely; the posterior of an edge is the share of those
assignments giving its target-side snode each label. Co-membership needs no
extra constraint: all edges on a snode read the same variable.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Tuple

import numpy as np

from adversary.knowledge import pinned_labels
from adversary.models import EXACT, MONTECARLO, Hypothesis, InferenceResult, Knowledge
from secretaries.errors import ConstraintViolation, InconsistentKnowledge, TooLarge
from secretaries.models import Edge, PublicView
from secretaries.rng import make_rng

logger = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 12
DEFAULT_ENUMERATION_CAP = 10**7


def assignment_count(sizes: Dict[str, int]) -> int:
    count = factorial(sum(sizes.values()))
    for size in sizes.values():
        count //= factorial(size)
    return count


def _target_side(view: PublicView, edge: Edge, target: str) -> str:
    for snode in edge.endpoints():
        if view.owner(snode) == target:
            return snode
    raise ConstraintViolation(f"Edge {edge} does not touch {target!r}")


def _check_shape(view: PublicView, target: str, hypothesis: Hypothesis) -> List[str]:
    if target not in view.users:
        raise ConstraintViolation(f"Unknown target {target!r}")
    snodes = view.snodes_of(target)
    if hypothesis.total != len(snodes):
        raise InconsistentKnowledge(
            f"Hypothesis sizes add to {hypothesis.total} but {target!r} has {len(snodes)} snodes"
        )
    return snodes


def _assignments(snodes: List[str], sizes: Dict[str, int], pins: Dict[str, str]) -> Iterator[Tuple[str, ...]]:
    """Yield every label tuple (aligned with ``snodes``) that respects sizes and pins."""
    labels = sorted(sizes)
    remaining = dict(sizes)
    chosen: List[str] = []

    def place(position: int) -> Iterator[Tuple[str, ...]]:
        if position == len(snodes):
            yield tuple(chosen)
            return
        pinned = pins.get(snodes[position])
        for label in labels if pinned is None else (pinned,):
            if remaining[label] == 0:
                continue
            remaining[label] -= 1
            chosen.append(label)
            yield from place(position + 1)
            chosen.pop()
            remaining[label] += 1

    yield from place(0)


def enumerate_posterior(
    view: PublicView,
    knowledge: Knowledge,
    target_user: str,
    target_edge: Edge,
    hypothesis: Hypothesis,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> InferenceResult:
    """Exact posterior by listing every consistent assignment."""
    snodes = _check_shape(view, target_user, hypothesis)
    if len(snodes) > exact_limit:
        raise TooLarge(f"{target_user!r} has {len(snodes)} snodes, over the exact limit {exact_limit}")
    if assignment_count(hypothesis.sizes) > enumeration_cap:
        raise TooLarge(f"Hypothesis for {target_user!r} spans more than {enumeration_cap} assignments")
    position = snodes.index(_target_side(view, target_edge, target_user))
    pins = pinned_labels(view, knowledge, target_user, hypothesis)

    counts = {label: 0 for label in hypothesis.labels}
    total = 0
    for assignment in _assignments(snodes, hypothesis.sizes, pins):
        counts[assignment[position]] += 1
        total += 1
    if total == 0:
        raise InconsistentKnowledge(f"No assignment of {target_user!r}'s snodes fits the knowledge")
    posterior = {label: float(Fraction(count, total)) for label, count in counts.items()}
    return InferenceResult.from_posterior(target_edge, target_user, posterior, EXACT)


def sample_posterior(
    view: PublicView,
    knowledge: Knowledge,
    target_user: str,
    target_edge: Edge,
    hypothesis: Hypothesis,
    samples: int,
    seed: int,
) -> InferenceResult:
    """Monte Carlo estimate of :func:`enumerate_posterior` by rejection sampling."""
    snodes = _check_shape(view, target_user, hypothesis)
    position = snodes.index(_target_side(view, target_edge, target_user))
    pins = pinned_labels(view, knowledge, target_user, hypothesis)
    labels = hypothesis.labels
    rng = make_rng(seed)

    base = np.repeat(np.arange(len(labels)), [hypothesis.sizes[label] for label in labels])
    draws = rng.permuted(np.tile(base, (samples, 1)), axis=1)
    accepted = np.ones(samples, dtype=bool)
    for snode, label in pins.items():
        accepted &= draws[:, snodes.index(snode)] == labels.index(label)
    kept = draws[accepted, position]
    if kept.size == 0:
        raise InconsistentKnowledge(f"No sampled assignment of {target_user!r}'s snodes fits the knowledge")
    counts = np.bincount(kept, minlength=len(labels))
    posterior = {label: float(counts[index]) / kept.size for index, label in enumerate(labels)}
    logger.debug("sampled posterior for %s kept %d of %d draws", target_user, kept.size, samples)
    return InferenceResult.from_posterior(target_edge, target_user, posterior, MONTECARLO)
