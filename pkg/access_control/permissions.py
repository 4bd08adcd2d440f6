"""Permission labels and per-owner policies."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable

from secretaries.errors import InvalidPermissionSet
from secretaries.models import GroupKey


class Permission(str, Enum):
    ViewBasicProfile = "ViewBasicProfile"
    ViewFullProfile = "ViewFullProfile"
    ViewPhotos = "ViewPhotos"
    ViewContactInfo = "ViewContactInfo"
    ViewTravelSchedule = "ViewTravelSchedule"
    PostComment = "PostComment"
    ReadArticles = "ReadArticles"
    WriteArticles = "WriteArticles"
    DownloadArticles = "DownloadArticles"
    PostArticles = "PostArticles"
    ViewMemberList = "ViewMemberList"
    BogusPage = "BogusPage"


# Guests (seekers) never get these unless the deployment explicitly allows it.
SENSITIVE_FOR_GUESTS: FrozenSet[Permission] = frozenset(
    {Permission.ViewMemberList, Permission.ViewContactInfo, Permission.ViewFullProfile}
)

OWNER_PERMISSIONS: FrozenSet[Permission] = frozenset(Permission) - {Permission.BogusPage}

DEFAULT_GUEST: FrozenSet[Permission] = frozenset({Permission.ViewBasicProfile})


def permission_set(permissions: Iterable[Permission | str]) -> FrozenSet[Permission]:
    """Coerce names to :class:`Permission` and enforce BogusPage exclusivity."""
    result = set()
    for item in permissions:
        try:
            result.add(item if isinstance(item, Permission) else Permission[item])
        except KeyError:
            raise InvalidPermissionSet(f"Unknown permission {item!r}") from None
    if Permission.BogusPage in result and len(result) > 1:
        raise InvalidPermissionSet("BogusPage cannot be combined with other permissions")
    return frozenset(result)


@dataclass(frozen=True)
class Policy:
    """Immutable access policy of one owner; updates return a new policy."""

    owner: str
    entries: Dict[GroupKey, FrozenSet[Permission]] = field(default_factory=dict)
    guest: FrozenSet[Permission] = DEFAULT_GUEST

    def permissions_for(self, group: GroupKey) -> FrozenSet[Permission]:
        return self.entries.get(group, frozenset())

    def with_entry(self, group: GroupKey, permissions: Iterable[Permission | str]) -> "Policy":
        entries = dict(self.entries)
        entries[group] = permission_set(permissions)
        return replace(self, entries=entries)

    def with_guest(self, permissions: Iterable[Permission | str], allow_sensitive: bool = False) -> "Policy":
        guest = permission_set(permissions)
        exposed = guest & SENSITIVE_FOR_GUESTS
        if exposed and not allow_sensitive:
            names = ", ".join(sorted(item.value for item in exposed))
            raise InvalidPermissionSet(f"Guest permissions may not include {names}")
        return replace(self, guest=guest)
