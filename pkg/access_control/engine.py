"""Relationship-grained access evaluation.

What a viewer may see on an owner's page depends only on the owner-side
private tag of the edge joining them: the group of the owner's secretary at
that edge. Unconnected viewers get the guest set, a connected viewer whose
group has no entry gets nothing.
"""

from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterable, Optional, Set

from access_control.permissions import OWNER_PERMISSIONS, Permission, Policy, permission_set
from secretaries.config import Settings
from secretaries.errors import UnknownGroup
from secretaries.graph import SecretaryGraph
from secretaries.models import Edge, GroupKey

logger = logging.getLogger(__name__)


def evaluate_access(graph: SecretaryGraph, policy: Policy, owner: str, viewer: str) -> FrozenSet[Permission]:
    graph.user(owner)
    if viewer == owner:
        return OWNER_PERMISSIONS
    if viewer not in graph.users:
        return policy.guest
    edge = graph.edge_between(owner, viewer)
    if edge is None:
        return policy.guest
    return policy.permissions_for(graph.group_of_edge(edge, owner))


def visible_members(graph: SecretaryGraph, policy: Policy, owner: str, viewer: str) -> Set[str]:
    """Users connected to ``owner`` through the viewer's own group, viewer included."""
    if Permission.ViewMemberList not in evaluate_access(graph, policy, owner, viewer):
        return set()
    scope: Optional[GroupKey] = None
    if viewer != owner:
        edge = graph.edge_between(owner, viewer)
        # Guests belong to no group, so there is no member list to scope to.
        if edge is None:
            return set()
        scope = graph.group_of_edge(edge, owner)
    members = set()
    for other in graph.neighbours(owner):
        edge = graph.edge_between(owner, other)
        if scope is None or graph.group_of_edge(edge, owner) == scope:
            members.add(other)
    return members


def promote(graph: SecretaryGraph, owner: str, viewer: str, new_group: GroupKey | str) -> Edge:
    """Move the owner's side of the ``owner``-``viewer`` edge into ``new_group``."""
    return graph.rehome_edge(owner, viewer, new_group)


class AccessControl:
    """Holds one policy per owner for a graph and evaluates against them."""

    def __init__(self, graph: SecretaryGraph, settings: Optional[Settings] = None) -> None:
        self.graph = graph
        self.settings = settings or Settings()
        self.policies: Dict[str, Policy] = {}

    def policy(self, owner: str) -> Policy:
        self.graph.user(owner)
        return self.policies.get(owner) or Policy(owner)

    def set_policy(self, owner: str, group: GroupKey | str, permissions: Iterable[Permission | str]) -> None:
        key = GroupKey.coerce(group)
        if not self.graph.user(owner).has_group(key):
            raise UnknownGroup(f"User {owner!r} has no group {key.encode()!r}")
        self.policies[owner] = self.policy(owner).with_entry(key, permissions)
        logger.debug("policy entry replaced for %s", owner)

    def set_guest(self, owner: str, permissions: Iterable[Permission | str]) -> None:
        self.policies[owner] = self.policy(owner).with_guest(permissions, self.settings.allow_sensitive_guest)

    def install(self, policy: Policy) -> None:
        """Adopt a whole policy (e.g. loaded from disk) after checking it against the graph."""
        user = self.graph.user(policy.owner)
        entries = {}
        for key, permissions in policy.entries.items():
            if not user.has_group(key):
                raise UnknownGroup(f"User {policy.owner!r} has no group {key.encode()!r}")
            entries[key] = permission_set(permissions)
        self.policies[policy.owner] = Policy(policy.owner, entries).with_guest(
            policy.guest, self.settings.allow_sensitive_guest
        )

    def evaluate(self, owner: str, viewer: str) -> FrozenSet[Permission]:
        return evaluate_access(self.graph, self.policy(owner), owner, viewer)

    def members(self, owner: str, viewer: str) -> Set[str]:
        return visible_members(self.graph, self.policy(owner), owner, viewer)

    def promote(self, owner: str, viewer: str, new_group: GroupKey | str) -> Edge:
        return promote(self.graph, owner, viewer, new_group)
