"""Empirical secretary load statistics for a concrete graph."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from statistics import fmean
from typing import Dict, List, Optional, Sequence

from scipy.stats import chisquare

from privacy_analysis.metrics import NetworkParams, analytic_report
from secretaries.graph import SecretaryGraph


@dataclass(frozen=True)
class LoadStats:
    snodes: int = 0
    min: int = 0
    max: int = 0
    mean: float = 0.0
    spread: int = 0
    chi_square: float = 0.0

    @classmethod
    def of(cls, degrees: Sequence[int]) -> "LoadStats":
        if not degrees:
            return cls()
        # All-equal (including all-zero) loads are perfectly uniform.
        statistic = 0.0 if min(degrees) == max(degrees) else float(chisquare(degrees).statistic)
        return cls(
            snodes=len(degrees),
            min=min(degrees),
            max=max(degrees),
            mean=fmean(degrees),
            spread=max(degrees) - min(degrees),
            chi_square=statistic,
        )


@dataclass(frozen=True)
class LoadReport:
    overall: LoadStats = field(default_factory=LoadStats)
    groups: Dict[str, LoadStats] = field(default_factory=dict)

    @property
    def worst_group_spread(self) -> int:
        return max((stats.spread for stats in self.groups.values()), default=0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "global": asdict(self.overall),
            "groups": {name: asdict(stats) for name, stats in sorted(self.groups.items())},
            "worst_group_spread": self.worst_group_spread,
        }


def load_report(graph: SecretaryGraph) -> LoadReport:
    groups: Dict[str, LoadStats] = {}
    for user_id in sorted(graph.users):
        for group in graph.users[user_id].groups:
            degrees = [graph.degree(sid) for sid in sorted(group.members)]
            groups[f"{user_id}/{group.key.encode()}"] = LoadStats.of(degrees)
    overall = [graph.degree(sid) for sid in sorted(graph.secretaries)]
    return LoadReport(overall=LoadStats.of(overall), groups=groups)


def observed_params(graph: SecretaryGraph) -> Optional[NetworkParams]:
    """Summarise a graph as :class:`NetworkParams` (rounded means); ``None`` when it has no edges."""
    if not graph.users or not graph.edges:
        return None
    users = list(graph.users.values())
    n = round(fmean(user.snode_count for user in users))
    k = round(fmean(user.type_count for user in users))
    instances: List[float] = [len(user.groups) / user.type_count for user in users]
    degree = 2 * len(graph.edges) / len(users)
    return NetworkParams(n=n, k=k, l=max(1, round(fmean(instances))), c=degree / k, m=len(users))


def metrics_report(graph: SecretaryGraph) -> Dict[str, object]:
    """Observed parameters, their closed forms, and measured loads in one document."""
    params = observed_params(graph)
    return {
        "params": params.to_dict() if params else None,
        "analytic": analytic_report(params),
        "empirical": load_report(graph).to_dict(),
    }
