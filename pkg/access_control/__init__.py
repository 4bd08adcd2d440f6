"""Multigrained access control keyed by relationship groups."""

from access_control.engine import AccessControl, evaluate_access, promote, visible_members
from access_control.permissions import Permission, Policy

__all__ = ["AccessControl", "Permission", "Policy", "evaluate_access", "promote", "visible_members"]
