"""Secretary graph: pool setup, two-phase connections and pool management.

Both construction schemes share one installer. The naive scheme splits ``n``
snodes evenly over ``tau`` type labels (one instance each); the advanced
scheme takes explicit ``(label, instance, capacity, subtype)`` entries.
Snode ids come from a seeded permutation so that sorting ids says nothing
about which group a snode works for.

Mutation is single-writer: callers serialise access to a graph. Read-only
projections such as :meth:`SecretaryGraph.export_public_view` return values
that are safe to share.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from secretaries.config import DEFAULT_PUBLIC_TAG
from secretaries.errors import (
    ConstraintViolation,
    DuplicateGroup,
    DuplicateLabel,
    DuplicatePair,
    DuplicateUser,
    EmptySpec,
    NoSuchRequest,
    NotConnected,
    NotOwner,
    SecretaryBusy,
    SelfConnection,
    ThresholdExceeded,
    UnknownSnode,
    UnknownUser,
)
from secretaries.models import (
    ADVANCED,
    NAIVE,
    Edge,
    GroupKey,
    PendingRequest,
    PublicView,
    RelationshipGroup,
    Secretary,
    User,
)
from secretaries.rng import make_rng

logger = logging.getLogger(__name__)

_RESERVED = ("#", "/")


@dataclass(frozen=True)
class GroupSpec:
    """One entry of an advanced setup: ``r_u(label^instance_capacity)``."""

    label: str
    instance: int
    capacity: int
    subtype: Optional[str] = None

    @property
    def key(self) -> GroupKey:
        return GroupKey(self.label, self.instance, self.subtype)


def naive_layout(n: int, type_labels: Sequence[str]) -> List[Tuple[GroupKey, int]]:
    """Split ``n`` snodes over the labels: ``n // tau`` each, remainder to the first labels."""
    tau = len(type_labels)
    base, extra = divmod(n, tau)
    return [(GroupKey(label), base + (1 if index < extra else 0)) for index, label in enumerate(type_labels)]


def snode_token(snode_id: str) -> int:
    return int(snode_id.rsplit(":s", 1)[1])


class SecretaryGraph:
    """Users, their secretaries and the edges between secretaries."""

    def __init__(self, seed: int = 0, public_tag: str = DEFAULT_PUBLIC_TAG) -> None:
        self.seed = seed
        self.public_tag = public_tag
        self.users: Dict[str, User] = {}
        self.secretaries: Dict[str, Secretary] = {}
        self.edges: Set[Edge] = set()
        # (requester, target) -> the requester's private group choice
        self.pending: Dict[Tuple[str, str], GroupKey] = {}
        self._degree: Counter = Counter()
        self._links: Dict[FrozenSet[str], Edge] = {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SecretaryGraph):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.users == other.users
            and self.secretaries == other.secretaries
            and self.edges == other.edges
            and self.pending == other.pending
        )

    # ------------------------------------------------------------------ #
    # Lookups
    # ------------------------------------------------------------------ #
    def user(self, user_id: str) -> User:
        try:
            return self.users[user_id]
        except KeyError:
            raise UnknownUser(f"Unknown user {user_id!r}") from None

    def secretary(self, snode_id: str) -> Secretary:
        try:
            return self.secretaries[snode_id]
        except KeyError:
            raise UnknownSnode(f"Unknown snode {snode_id!r}") from None

    def degree(self, snode_id: str) -> int:
        return self._degree[snode_id]

    def edge_between(self, first: str, second: str) -> Optional[Edge]:
        return self._links.get(frozenset((first, second)))

    def endpoint_of(self, edge: Edge, user_id: str) -> str:
        """Return the endpoint of ``edge`` owned by ``user_id``."""
        for snode in edge.endpoints():
            if self.secretaries[snode].owner == user_id:
                return snode
        raise NotOwner(f"User {user_id!r} owns no endpoint of {edge}")

    def edges_of(self, user_id: str) -> List[Edge]:
        return sorted(edge for pair, edge in self._links.items() if user_id in pair)

    def neighbours(self, user_id: str) -> List[str]:
        found = []
        for pair in self._links:
            if user_id in pair:
                found.extend(other for other in pair if other != user_id)
        return sorted(found)

    def group_of_edge(self, edge: Edge, user_id: str) -> GroupKey:
        """Private group the ``user_id`` side of ``edge`` works for."""
        return self.secretaries[self.endpoint_of(edge, user_id)].group

    # ------------------------------------------------------------------ #
    # Setup phase
    # ------------------------------------------------------------------ #
    def setup_naive(
        self,
        user_id: str,
        n: int,
        tau: int,
        th: int,
        type_labels: Sequence[str],
        seed: int,
        public_tag: Optional[str] = None,
    ) -> User:
        if not (1 <= tau <= n <= th):
            raise ConstraintViolation(f"Naive setup for {user_id!r} needs 1 <= tau <= n <= th, got tau={tau}, n={n}, th={th}")
        if len(type_labels) != tau:
            raise ConstraintViolation(f"Expected {tau} type labels for {user_id!r}, got {len(type_labels)}")
        duplicates = sorted(label for label, count in Counter(type_labels).items() if count > 1)
        if duplicates:
            raise DuplicateLabel(f"Duplicate type labels for {user_id!r}: {', '.join(duplicates)}")
        return self._install(user_id, th, NAIVE, naive_layout(n, type_labels), seed, public_tag)

    def setup_advanced(
        self,
        user_id: str,
        spec: Sequence[GroupSpec | tuple],
        th: int,
        seed: int,
        public_tag: Optional[str] = None,
    ) -> User:
        entries = [item if isinstance(item, GroupSpec) else GroupSpec(*item) for item in spec]
        if not entries:
            raise EmptySpec(f"Advanced setup for {user_id!r} has no groups")
        keys = [entry.key for entry in entries]
        if len(set(keys)) != len(keys):
            repeated = sorted({key.encode() for key in keys if keys.count(key) > 1})
            raise DuplicateGroup(f"Duplicate groups for {user_id!r}: {', '.join(repeated)}")
        for entry in entries:
            if entry.capacity < 1 or entry.instance < 1:
                raise ConstraintViolation(f"Group {entry.key.encode()!r} needs positive instance and capacity")
        total = sum(entry.capacity for entry in entries)
        if total > th:
            raise ConstraintViolation(f"Advanced setup for {user_id!r} asks for {total} snodes over threshold {th}")
        return self._install(user_id, th, ADVANCED, [(entry.key, entry.capacity) for entry in entries], seed, public_tag)

    def _install(
        self,
        user_id: str,
        th: int,
        scheme: str,
        layout: List[Tuple[GroupKey, int]],
        seed: int,
        public_tag: Optional[str],
    ) -> User:
        if user_id in self.users:
            raise DuplicateUser(f"User {user_id!r} already exists")
        if not user_id or ":" in user_id:
            raise ConstraintViolation(f"User id {user_id!r} must be non-empty and contain no ':'")
        for key, _ in layout:
            if not key.label or any(mark in key.label + (key.subtype or "") for mark in _RESERVED):
                raise ConstraintViolation(f"Label {key.label!r} must be non-empty and avoid '#' and '/'")
        tag = public_tag or self.public_tag
        total = sum(capacity for _, capacity in layout)
        tokens = make_rng(seed).permutation(total) + 1

        user = User(id=user_id, threshold=th, scheme=scheme, public_tag=tag)
        creation_index = self._next_creation_index()
        slot = 0
        for key, capacity in layout:
            group = RelationshipGroup(key.label, key.instance, key.subtype)
            for _ in range(capacity):
                snode_id = f"{user_id}:s{int(tokens[slot])}"
                self.secretaries[snode_id] = Secretary(snode_id, user_id, tag, key, creation_index)
                group.members.add(snode_id)
                creation_index += 1
                slot += 1
            user.groups.append(group)
        self.users[user_id] = user
        logger.debug("installed %s user %s with %d snodes", scheme, user_id, total)
        return user

    def _next_creation_index(self) -> int:
        if not self.secretaries:
            return 0
        return max(sec.creation_index for sec in self.secretaries.values()) + 1

    # ------------------------------------------------------------------ #
    # Connection phase
    # ------------------------------------------------------------------ #
    def request_connection(self, requester: str, requester_group: GroupKey | str, target: str) -> PendingRequest:
        """Record ``requester``'s private group choice for a connection to ``target``."""
        key = GroupKey.coerce(requester_group)
        owner = self.user(requester)
        self.user(target)
        if requester == target:
            raise SelfConnection(f"User {requester!r} cannot connect to itself")
        owner.group(key)
        if self.edge_between(requester, target) is not None:
            raise DuplicatePair(f"Users {requester!r} and {target!r} are already connected")
        if (requester, target) in self.pending or (target, requester) in self.pending:
            raise DuplicatePair(f"A request between {requester!r} and {target!r} is already pending")
        self.pending[(requester, target)] = key
        logger.debug("pending request %s -> %s", requester, target)
        return PendingRequest(requester, target)

    def accept_connection(self, request: PendingRequest, target_group: GroupKey | str) -> Edge:
        """Target agrees with its own private group; joins the least-loaded snodes."""
        requester_group = self.pending.get((request.requester, request.target))
        if requester_group is None:
            raise NoSuchRequest(f"No pending request {request.requester!r} -> {request.target!r}")
        key = GroupKey.coerce(target_group)
        self.user(request.target).group(key)
        left = self._least_loaded(request.requester, requester_group)
        right = self._least_loaded(request.target, key)
        del self.pending[(request.requester, request.target)]
        edge = self._add_edge(left, right)
        logger.debug("connected %s and %s", request.requester, request.target)
        return edge

    def connect(self, requester: str, requester_group: GroupKey | str, target: str, target_group: GroupKey | str) -> Edge:
        return self.accept_connection(self.request_connection(requester, requester_group, target), target_group)

    def _least_loaded(self, user_id: str, key: GroupKey) -> str:
        members = self.user(user_id).group(key).members
        return min(members, key=lambda sid: (self._degree[sid], self.secretaries[sid].creation_index))

    def _add_edge(self, left: str, right: str) -> Edge:
        edge = Edge.between(left, right)
        pair = frozenset((self.secretaries[left].owner, self.secretaries[right].owner))
        self.edges.add(edge)
        self._links[pair] = edge
        self._degree[left] += 1
        self._degree[right] += 1
        return edge

    def _drop_edge(self, edge: Edge) -> None:
        pair = frozenset(self.secretaries[snode].owner for snode in edge.endpoints())
        self.edges.discard(edge)
        del self._links[pair]
        for snode in edge.endpoints():
            self._degree[snode] -= 1
            if not self._degree[snode]:
                del self._degree[snode]

    def restore_edge(self, edge: Edge) -> None:
        """Re-insert a stored edge (deserialization); the one-edge-per-pair rule still applies."""
        owners = [self.secretary(snode).owner for snode in edge.endpoints()]
        if owners[0] == owners[1]:
            raise SelfConnection(f"Edge {edge} joins two snodes of {owners[0]!r}")
        if self.edge_between(*owners) is not None:
            raise DuplicatePair(f"Users {owners[0]!r} and {owners[1]!r} already share an edge")
        self._add_edge(edge.a, edge.b)

    # ------------------------------------------------------------------ #
    # Secretary management
    # ------------------------------------------------------------------ #
    def _owned(self, user_id: str, snode_id: str) -> Secretary:
        self.user(user_id)
        secretary = self.secretary(snode_id)
        if secretary.owner != user_id:
            raise NotOwner(f"Snode {snode_id!r} is not owned by {user_id!r}")
        return secretary

    def swap_roles(self, user_id: str, snode_a: str, snode_b: str) -> None:
        first = self._owned(user_id, snode_a)
        second = self._owned(user_id, snode_b)
        if snode_a == snode_b or first.group == second.group:
            return
        user = self.users[user_id]
        group_a, group_b = user.group(first.group), user.group(second.group)
        group_a.members.remove(snode_a)
        group_b.members.remove(snode_b)
        group_a.members.add(snode_b)
        group_b.members.add(snode_a)
        first.group, second.group = second.group, first.group
        logger.debug("swapped roles of two snodes of %s", user_id)

    def add_secretary(self, user_id: str, group: GroupKey | str) -> str:
        user = self.user(user_id)
        key = GroupKey.coerce(group)
        target = user.group(key)
        if user.snode_count >= user.threshold:
            raise ThresholdExceeded(f"User {user_id!r} already has {user.snode_count} of {user.threshold} snodes")
        token = max(snode_token(sid) for sid in user.snodes()) + 1
        snode_id = f"{user_id}:s{token}"
        self.secretaries[snode_id] = Secretary(snode_id, user_id, user.public_tag, key, self._next_creation_index())
        target.members.add(snode_id)
        logger.debug("added snode to %s", user_id)
        return snode_id

    def remove_secretary(self, user_id: str, snode_id: str) -> None:
        secretary = self._owned(user_id, snode_id)
        if self._degree[snode_id]:
            raise SecretaryBusy(f"Snode {snode_id!r} still handles {self._degree[snode_id]} connection(s)")
        group = self.users[user_id].group(secretary.group)
        if group.capacity == 1:
            raise ConstraintViolation(f"Removing {snode_id!r} would leave group {group.key.encode()!r} empty")
        group.members.remove(snode_id)
        del self.secretaries[snode_id]
        logger.debug("removed jobless snode of %s", user_id)

    def add_group(self, user_id: str, group: GroupKey | str, capacity: int = 1) -> List[str]:
        """Open a new relationship type, instance or subtype with ``capacity`` fresh snodes."""
        user = self.user(user_id)
        key = GroupKey.coerce(group)
        if user.has_group(key):
            raise DuplicateGroup(f"User {user_id!r} already has group {key.encode()!r}")
        if not key.label or any(mark in key.label + (key.subtype or "") for mark in _RESERVED):
            raise ConstraintViolation(f"Label {key.label!r} must be non-empty and avoid '#' and '/'")
        if isinstance(capacity, bool) or not isinstance(capacity, int) or capacity < 1 or key.instance < 1:
            raise ConstraintViolation(f"Group {key.encode()!r} needs positive instance and capacity")
        if user.snode_count + capacity > user.threshold:
            raise ThresholdExceeded(
                f"User {user_id!r} has {user.snode_count} of {user.threshold} snodes, cannot add {capacity}"
            )
        first = max(snode_token(sid) for sid in user.snodes()) + 1
        created = RelationshipGroup(key.label, key.instance, key.subtype)
        creation_index = self._next_creation_index()
        for offset in range(capacity):
            snode_id = f"{user_id}:s{first + offset}"
            self.secretaries[snode_id] = Secretary(snode_id, user_id, user.public_tag, key, creation_index + offset)
            created.members.add(snode_id)
        user.groups.append(created)
        logger.debug("opened a group with %d snodes for %s", capacity, user_id)
        return sorted(created.members, key=snode_token)

    def reassign_secretary(self, user_id: str, snode_id: str, group: GroupKey | str) -> None:
        """Give one snode a new job; its edges follow it into ``group``."""
        secretary = self._owned(user_id, snode_id)
        user = self.users[user_id]
        key = GroupKey.coerce(group)
        target = user.group(key)
        if secretary.group == key:
            return
        source = user.group(secretary.group)
        if source.capacity == 1:
            raise ConstraintViolation(f"Reassigning {snode_id!r} would leave group {source.key.encode()!r} empty")
        source.members.remove(snode_id)
        target.members.add(snode_id)
        secretary.group = key
        logger.debug("reassigned a snode of %s", user_id)

    def rehome_edge(self, owner: str, other: str, new_group: GroupKey | str) -> Edge:
        """Move ``owner``'s endpoint of its edge with ``other`` into ``new_group``."""
        key = GroupKey.coerce(new_group)
        user = self.user(owner)
        self.user(other)
        edge = self.edge_between(owner, other)
        if edge is None:
            raise NotConnected(f"Users {owner!r} and {other!r} are not connected")
        user.group(key)
        kept = edge.other(self.endpoint_of(edge, owner))
        self._drop_edge(edge)
        moved = self._add_edge(self._least_loaded(owner, key), kept)
        logger.debug("rehomed an edge of %s", owner)
        return moved

    # ------------------------------------------------------------------ #
    # Projections and checks
    # ------------------------------------------------------------------ #
    def export_public_view(self) -> PublicView:
        return PublicView(
            users=frozenset(self.users),
            snodes={sid: (sec.owner, sec.public_tag) for sid, sec in self.secretaries.items()},
            edges=frozenset(self.edges),
        )

    def degree_sequence(self, snodes: Optional[Iterable[str]] = None) -> List[int]:
        chosen = self.secretaries if snodes is None else snodes
        return sorted(self._degree[sid] for sid in chosen)

    def check_invariants(self) -> None:
        for sid, secretary in self.secretaries.items():
            user = self.user(secretary.owner)
            if secretary.public_tag != user.public_tag:
                raise ConstraintViolation(f"Snode {sid!r} public tag differs from its owner's")
            if sid not in user.group(secretary.group).members:
                raise ConstraintViolation(f"Snode {sid!r} is missing from its group")
        for user in self.users.values():
            keys = [group.key for group in user.groups]
            if len(set(keys)) != len(keys):
                raise ConstraintViolation(f"User {user.id!r} repeats a group key")
            for group in user.groups:
                if group.capacity < 1:
                    raise ConstraintViolation(f"Group {group.key.encode()!r} of {user.id!r} is empty")
                for sid in group.members:
                    secretary = self.secretary(sid)
                    if secretary.owner != user.id or secretary.group != group.key:
                        raise ConstraintViolation(f"Snode {sid!r} does not point back to {group.key.encode()!r}")
            if user.snode_count > user.threshold:
                raise ConstraintViolation(f"User {user.id!r} exceeds its threshold")
            if user.scheme == NAIVE and user.type_count > user.snode_count:
                raise ConstraintViolation(f"User {user.id!r} has more types than snodes")
        degrees: Counter = Counter()
        pairs: Set[FrozenSet[str]] = set()
        for edge in self.edges:
            owners = frozenset(self.secretary(snode).owner for snode in edge.endpoints())
            if len(owners) != 2 or owners in pairs:
                raise ConstraintViolation(f"Edge {edge} breaks the one-edge-per-user-pair rule")
            pairs.add(owners)
            degrees.update(edge.endpoints())
        if degrees != +self._degree:
            raise ConstraintViolation("Cached snode degrees disagree with the edge set")
        for (requester, target), key in self.pending.items():
            self.user(requester).group(key)
            self.user(target)
