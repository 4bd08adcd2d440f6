"""Adversary kinds, their knowledge, and inference results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Union

from secretaries.errors import ConstraintViolation
from secretaries.models import Edge, GroupKey, PublicView

EXACT = "exact"
MONTECARLO = "montecarlo"
NO_INFERENCE = "none"
PRIOR = "prior"


@dataclass(frozen=True)
class Seeker:
    name = "seeker"


@dataclass(frozen=True)
class Passive:
    coalition: FrozenSet[str]
    name = "passive"

    def __post_init__(self) -> None:
        if not self.coalition:
            raise ConstraintViolation("A passive coalition needs at least one member")


@dataclass(frozen=True)
class Active:
    attacker: str
    probes: int
    name = "active"

    def __post_init__(self) -> None:
        if self.probes < 0:
            raise ConstraintViolation(f"Probe count must be non-negative, got {self.probes}")


AdversaryKind = Union[Seeker, Passive, Active]


class Contact(NamedTuple):
    """One of a member's own edges: the far snode and the member's own group."""

    edge: Edge
    target_snode: str
    own_group: GroupKey


@dataclass(frozen=True)
class Knowledge:
    """What a coalition holds: the public view plus each member's own edges.

    ``learned`` holds edges whose far-side type label a member found out some
    other way; nothing else about a target's private tags is ever included.
    """

    public: PublicView
    contacts: Dict[str, List[Contact]] = field(default_factory=dict)
    learned: Dict[Edge, str] = field(default_factory=dict)

    def contacted(self, target: str) -> Dict[str, List[Edge]]:
        """Target snodes hit by the coalition, each with the coalition edges on it."""
        clusters: Dict[str, List[Edge]] = {}
        for member in sorted(self.contacts):
            for contact in self.contacts[member]:
                if self.public.owner(contact.target_snode) == target:
                    clusters.setdefault(contact.target_snode, []).append(contact.edge)
        return {snode: sorted(edges) for snode, edges in sorted(clusters.items())}


@dataclass(frozen=True)
class Hypothesis:
    """Assumed type count and snode count per type label for one target."""

    type_count: int
    sizes: Dict[str, int]

    def __post_init__(self) -> None:
        if self.type_count != len(self.sizes):
            raise ConstraintViolation(f"Hypothesis names {len(self.sizes)} labels but k={self.type_count}")
        if any(size < 0 for size in self.sizes.values()):
            raise ConstraintViolation("Hypothesis group sizes must be non-negative")

    @property
    def labels(self) -> List[str]:
        return sorted(self.sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes.values())


@dataclass(frozen=True)
class InferenceResult:
    edge: Edge
    target: str
    posterior: Dict[str, float]
    guess: str
    method: str

    @classmethod
    def from_posterior(cls, edge: Edge, target: str, posterior: Dict[str, float], method: str) -> "InferenceResult":
        # Highest probability wins; ties go to the lexicographically smallest label.
        guess = min(posterior, key=lambda label: (-posterior[label], label))
        return cls(edge, target, dict(sorted(posterior.items())), guess, method)

    def to_dict(self) -> Dict[str, object]:
        return {
            "edge": [self.edge.a, self.edge.b],
            "target": self.target,
            "posterior": self.posterior,
            "guess": self.guess,
            "method": self.method,
            "exact": self.method == EXACT,
            "montecarlo": self.method == MONTECARLO,
        }


@dataclass
class AttackReport:
    model: str
    seed: int
    per_edge: List[InferenceResult] = field(default_factory=list)
    success_rate: float = 0.0
    expected_success: float = 0.0
    analytic_reference: Dict[str, Optional[float]] = field(default_factory=dict)
    histogram: Dict[str, int] = field(default_factory=dict)
    uniformity: Optional[Dict[str, float]] = None
    # Edges known to share one private tag because they end on the same snode.
    co_membership: List[List[Edge]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        payload: Dict[str, object] = {
            "model": self.model,
            "seed": self.seed,
            "per_edge": [result.to_dict() for result in self.per_edge],
            "co_membership": [[[edge.a, edge.b] for edge in cluster] for cluster in self.co_membership],
            "summary": {
                "edges": len(self.per_edge),
                "success_rate": self.success_rate,
                "expected_success": self.expected_success,
                "analytic_reference": self.analytic_reference,
            },
        }
        if self.model == Active.name:
            payload["histogram"] = dict(sorted(self.histogram.items()))
            payload["uniformity"] = self.uniformity
        return payload
