"""Data model for secretary-based social graphs.

A user never appears in the graph directly. It owns a pool of secretaries
(snodes); every snode carries the user's uniform public tag and a private tag
pointing at one of the user's relationship groups. Edges join snodes of two
different users and are the only structure that is ever published.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Set, Tuple

from secretaries.errors import MalformedInput, UnknownGroup

NAIVE = "naive"
ADVANCED = "advanced"


class GroupKey(NamedTuple):
    """Identifies one relationship group of a user, e.g. ``friend#2/close``."""

    label: str
    instance: int = 1
    subtype: Optional[str] = None

    def encode(self) -> str:
        text = f"{self.label}#{self.instance}"
        return f"{text}/{self.subtype}" if self.subtype else text

    def ordering(self) -> Tuple[str, int, str]:
        return (self.label, self.instance, self.subtype or "")

    @classmethod
    def parse(cls, text: str) -> "GroupKey":
        """Parse ``label[#instance][/subtype]``; a bare label means instance 1."""
        if not isinstance(text, str) or not text:
            raise MalformedInput(f"Group key must be a non-empty string, got {text!r}")
        body, _, subtype = text.partition("/")
        label, sep, instance = body.partition("#")
        if not label:
            raise MalformedInput(f"Group key {text!r} has no label")
        try:
            number = int(instance) if sep else 1
        except ValueError as exc:
            raise MalformedInput(f"Group key {text!r} has a non-numeric instance") from exc
        return cls(label, number, subtype or None)

    @classmethod
    def coerce(cls, value: "GroupKey | str | tuple") -> "GroupKey":
        if isinstance(value, GroupKey):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(*value)


@dataclass
class RelationshipGroup:
    label: str
    instance: int
    subtype: Optional[str] = None
    members: Set[str] = field(default_factory=set)

    @property
    def key(self) -> GroupKey:
        return GroupKey(self.label, self.instance, self.subtype)

    @property
    def capacity(self) -> int:
        return len(self.members)


@dataclass
class User:
    id: str
    threshold: int
    scheme: str
    public_tag: str
    groups: List[RelationshipGroup] = field(default_factory=list)

    @property
    def type_count(self) -> int:
        return len({group.label for group in self.groups})

    @property
    def snode_count(self) -> int:
        return sum(group.capacity for group in self.groups)

    @property
    def labels(self) -> List[str]:
        return sorted({group.label for group in self.groups})

    def group(self, key: GroupKey) -> RelationshipGroup:
        for group in self.groups:
            if group.key == key:
                return group
        raise UnknownGroup(f"User {self.id!r} has no group {key.encode()!r}")

    def has_group(self, key: GroupKey) -> bool:
        return any(group.key == key for group in self.groups)

    def label_sizes(self) -> Dict[str, int]:
        """Number of snodes per type label, instances and subtypes merged."""
        sizes: Dict[str, int] = {}
        for group in self.groups:
            sizes[group.label] = sizes.get(group.label, 0) + group.capacity
        return dict(sorted(sizes.items()))

    def snodes(self) -> Iterator[str]:
        for group in self.groups:
            yield from group.members


@dataclass
class Secretary:
    id: str
    owner: str
    public_tag: str
    group: GroupKey
    # Tie-break order for least-loaded selection; only the full graph dump carries it.
    creation_index: int


@dataclass(frozen=True, order=True)
class Edge:
    a: str
    b: str

    @classmethod
    def between(cls, first: str, second: str) -> "Edge":
        return cls(first, second) if first <= second else cls(second, first)

    def other(self, snode: str) -> str:
        if snode == self.a:
            return self.b
        if snode == self.b:
            return self.a
        raise KeyError(f"Snode {snode!r} is not an endpoint of {self}")

    def endpoints(self) -> Tuple[str, str]:
        return (self.a, self.b)


@dataclass(frozen=True)
class PendingRequest:
    """Handle for a request awaiting the target's answer.

    The requester's group choice stays inside the graph, so the target can
    accept without ever reading it.
    """

    requester: str
    target: str


@dataclass(frozen=True)
class PublicView:
    """Adversary-visible projection: users, snodes with public tags, edges."""

    users: FrozenSet[str]
    snodes: Dict[str, Tuple[str, str]]
    edges: FrozenSet[Edge]

    def owner(self, snode: str) -> str:
        return self.snodes[snode][0]

    def snodes_of(self, user: str) -> List[str]:
        return sorted(sid for sid, (owner, _) in self.snodes.items() if owner == user)

    def degree(self, snode: str) -> int:
        return sum(1 for edge in self.edges if snode in (edge.a, edge.b))

    def edges_of(self, user: str) -> List[Edge]:
        return sorted(
            edge for edge in self.edges if user in (self.owner(edge.a), self.owner(edge.b))
        )
