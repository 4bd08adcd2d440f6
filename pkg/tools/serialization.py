"""Canonical JSON documents for graphs, public views and policies.

Output is canonical: keys sorted, collections emitted in a fixed order, so
equal values always produce identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List

from access_control.permissions import Permission, Policy, permission_set
from secretaries.config import DEFAULT_PUBLIC_TAG
from secretaries.errors import MalformedInput, SecretaryGraphError, VersionMismatch
from secretaries.graph import SecretaryGraph
from secretaries.models import Edge, GroupKey, PublicView, RelationshipGroup, Secretary, User

FORMAT_VERSION = 1


def canonical_json(payload: Any) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _load(data: bytes | str, kind: str) -> Dict[str, Any]:
    try:
        payload = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"{kind} document is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or "version" not in payload:
        raise MalformedInput(f"{kind} document must be an object with a 'version' key")
    if payload["version"] != FORMAT_VERSION:
        raise VersionMismatch(f"{kind} document has version {payload['version']!r}, expected {FORMAT_VERSION}")
    return payload


def _edge_list(edges: Iterable[Edge]) -> List[List[str]]:
    return [[edge.a, edge.b] for edge in sorted(edges)]


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------


def graph_to_dict(graph: SecretaryGraph) -> Dict[str, Any]:
    users = {}
    for user_id, user in graph.users.items():
        users[user_id] = {
            "threshold": user.threshold,
            "scheme": user.scheme,
            "public_tag": user.public_tag,
            "groups": [
                {
                    "label": group.label,
                    "instance": group.instance,
                    "subtype": group.subtype,
                    "members": sorted(group.members),
                }
                for group in user.groups
            ],
        }
    secretaries = {
        sid: {
            "owner": sec.owner,
            "public_tag": sec.public_tag,
            "group": sec.group.encode(),
            "creation_index": sec.creation_index,
        }
        for sid, sec in graph.secretaries.items()
    }
    pending = [
        {"requester": requester, "requester_group": key.encode(), "target": target}
        for (requester, target), key in sorted(graph.pending.items())
    ]
    return {
        "version": FORMAT_VERSION,
        "seed": graph.seed,
        "users": users,
        "secretaries": secretaries,
        "edges": _edge_list(graph.edges),
        "pending": pending,
    }


def serialize_graph(graph: SecretaryGraph) -> bytes:
    return canonical_json(graph_to_dict(graph))


def graph_from_dict(payload: Dict[str, Any], public_tag: str = DEFAULT_PUBLIC_TAG) -> SecretaryGraph:
    graph = SecretaryGraph(seed=payload["seed"], public_tag=public_tag)
    for user_id, raw in payload["users"].items():
        user = User(id=user_id, threshold=raw["threshold"], scheme=raw["scheme"], public_tag=raw["public_tag"])
        for group in raw["groups"]:
            user.groups.append(
                RelationshipGroup(group["label"], group["instance"], group.get("subtype"), set(group["members"]))
            )
        graph.users[user_id] = user
    for sid, raw in payload["secretaries"].items():
        graph.secretaries[sid] = Secretary(
            sid, raw["owner"], raw["public_tag"], GroupKey.parse(raw["group"]), raw["creation_index"]
        )
    for a, b in payload["edges"]:
        graph.restore_edge(Edge.between(a, b))
    for raw in payload["pending"]:
        graph.pending[(raw["requester"], raw["target"])] = GroupKey.parse(raw["requester_group"])
    graph.check_invariants()
    return graph


def deserialize_graph(data: bytes | str, public_tag: str = DEFAULT_PUBLIC_TAG) -> SecretaryGraph:
    payload = _load(data, "Graph")
    try:
        return graph_from_dict(payload, public_tag)
    except MalformedInput:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, SecretaryGraphError) as exc:
        raise MalformedInput(f"Graph document is inconsistent: {type(exc).__name__}: {exc}") from exc


# ---------------------------------------------------------------------------
# Public view
# ---------------------------------------------------------------------------


def view_to_dict(view: PublicView) -> Dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "users": sorted(view.users),
        "snodes": {sid: {"owner": owner, "public_tag": tag} for sid, (owner, tag) in view.snodes.items()},
        "edges": _edge_list(view.edges),
    }


def serialize_view(view: PublicView) -> bytes:
    return canonical_json(view_to_dict(view))


def deserialize_view(data: bytes | str) -> PublicView:
    payload = _load(data, "Public view")
    try:
        return PublicView(
            users=frozenset(payload["users"]),
            snodes={sid: (raw["owner"], raw["public_tag"]) for sid, raw in payload["snodes"].items()},
            edges=frozenset(Edge.between(a, b) for a, b in payload["edges"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"Public view document is inconsistent: {exc}") from exc


# ---------------------------------------------------------------------------
# Policies
# ---------------------------------------------------------------------------


def _names(permissions: Iterable[Permission]) -> List[str]:
    return sorted(permission.value for permission in permissions)


def policy_to_dict(policy: Policy) -> Dict[str, Any]:
    return {
        "owner": policy.owner,
        "guest": _names(policy.guest),
        "entries": {key.encode(): _names(perms) for key, perms in policy.entries.items()},
    }


def policy_from_dict(payload: Dict[str, Any]) -> Policy:
    try:
        entries = {GroupKey.parse(key): permission_set(names) for key, names in payload["entries"].items()}
        return Policy(owner=payload["owner"], entries=entries, guest=permission_set(payload["guest"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"Policy document is inconsistent: {exc}") from exc


def serialize_policies(policies: Iterable[Policy]) -> bytes:
    ordered = sorted(policies, key=lambda policy: policy.owner)
    return canonical_json({"version": FORMAT_VERSION, "policies": [policy_to_dict(policy) for policy in ordered]})


def deserialize_policies(data: bytes | str) -> List[Policy]:
    payload = _load(data, "Policies")
    if not isinstance(payload.get("policies"), list):
        raise MalformedInput("Policies document needs a 'policies' list")
    return [policy_from_dict(raw) for raw in payload["policies"]]
