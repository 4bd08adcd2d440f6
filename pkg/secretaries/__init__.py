"""Secretary-based privacy-preserving social graphs."""

from secretaries.config import Settings
from secretaries.graph import GroupSpec, SecretaryGraph
from secretaries.models import Edge, GroupKey, PendingRequest, PublicView

__all__ = ["Edge", "GroupKey", "GroupSpec", "PendingRequest", "PublicView", "SecretaryGraph", "Settings"]
