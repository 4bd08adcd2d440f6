"""Seeded random networks for experiments and tests."""

from __future__ import annotations

from typing import List, Optional, Sequence

from secretaries.config import DEFAULT_PUBLIC_TAG
from secretaries.graph import GroupSpec, SecretaryGraph
from secretaries.rng import derive_seed, make_rng

# Chosen so that none is a substring of the public tag, a user id or a JSON key.
DEFAULT_LABELS: Sequence[str] = (
    "acquaintance",
    "business",
    "classmate",
    "competitor",
    "enemy",
    "family",
    "mentor",
    "neighbor",
    "rival",
    "teammate",
)


def type_labels(count: int) -> List[str]:
    if count <= len(DEFAULT_LABELS):
        return list(DEFAULT_LABELS[:count])
    return list(DEFAULT_LABELS) + [f"kind{index:03d}" for index in range(len(DEFAULT_LABELS), count)]


def advanced_spec(n: int, labels: Sequence[str], instances: int) -> List[GroupSpec]:
    """Spread ``n`` snodes over ``len(labels) * instances`` groups as evenly as possible."""
    slots = [(label, instance) for label in labels for instance in range(1, instances + 1)]
    base, extra = divmod(n, len(slots))
    return [GroupSpec(label, instance, base + (1 if index < extra else 0)) for index, (label, instance) in enumerate(slots)]


def random_network(
    users: int,
    snodes: int,
    types: int,
    per_type_connections: float,
    seed: int,
    instances: int = 1,
    labels: Optional[Sequence[str]] = None,
    public_tag: str = DEFAULT_PUBLIC_TAG,
) -> SecretaryGraph:
    """Build ``users`` users with ``snodes`` secretaries each and connect them at random.

    Each unordered pair is connected with probability
    ``min(1, per_type_connections * types / (users - 1))`` so a user's mean
    degree approaches ``c * k``. Both sides choose one of their groups
    uniformly at random.
    """
    chosen = list(labels) if labels is not None else type_labels(types)
    graph = SecretaryGraph(seed=seed, public_tag=public_tag)
    user_ids = [f"user{index:03d}" for index in range(users)]
    for index, user_id in enumerate(user_ids):
        user_seed = derive_seed(seed, index)
        if instances == 1:
            graph.setup_naive(user_id, snodes, types, snodes, chosen[:types], user_seed)
        else:
            graph.setup_advanced(user_id, advanced_spec(snodes, chosen[:types], instances), snodes, user_seed)

    rng = make_rng(seed, users, 1)
    probability = min(1.0, per_type_connections * types / (users - 1)) if users > 1 else 0.0
    for left in range(users):
        for right in range(left + 1, users):
            if rng.random() >= probability:
                continue
            first, second = user_ids[left], user_ids[right]
            if rng.random() < 0.5:
                first, second = second, first
            first_groups = graph.users[first].groups
            second_groups = graph.users[second].groups
            first_key = first_groups[int(rng.integers(len(first_groups)))].key
            second_key = second_groups[int(rng.integers(len(second_groups)))].key
            graph.connect(first, first_key, second, second_key)
    return graph
