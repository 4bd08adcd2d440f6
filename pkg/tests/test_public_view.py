# Unit test for the public projection: JSON view and DOT export carry no private data
import json

from secretaries.generators import random_network
from secretaries.graph import GroupSpec, SecretaryGraph
from secretaries.rng import make_rng
from tools.dot_export import export_dot
from tools.serialization import serialize_view


def _private_strings(graph):
    found = set()
    for user in graph.users.values():
        for group in user.groups:
            found.update(text for text in (group.label, group.subtype, group.key.encode()) if text)
    return found


def _random_graph(seed):
    rng = make_rng(seed, 99)
    snodes = int(rng.integers(2, 7))
    types = int(rng.integers(1, min(snodes, 4) + 1))
    instances = 2 if 2 * types <= snodes and rng.random() < 0.5 else 1
    graph = random_network(int(rng.integers(2, 7)), snodes, types, 1.0, seed, instances=instances)
    graph.setup_advanced("zed", [GroupSpec("mentor", 1, 1, "close"), GroupSpec("mentor", 1, 1, "distant")], 2, seed)
    graph.connect("zed", "mentor#1/close", "user000", graph.users["user000"].groups[0].key)
    return graph


def test_empty_graph_gives_empty_view():
    view = SecretaryGraph().export_public_view()
    assert not view.users and not view.snodes and not view.edges
    assert json.loads(serialize_view(view)) == {"version": 1, "users": [], "snodes": {}, "edges": []}
    assert export_dot(view) == 'graph "public" {\n}\n'


def test_view_keys_and_shared_public_tag():
    graph = SecretaryGraph()
    graph.setup_naive("alice", 6, 3, 6, ["family", "enemy", "rival"], seed=1)
    graph.setup_naive("bob", 6, 2, 6, ["business", "classmate"], seed=2, public_tag="poker face")
    graph.connect("alice", "family", "bob", "business")
    view = graph.export_public_view()
    payload = json.loads(serialize_view(view))
    assert set(payload) == {"version", "users", "snodes", "edges"}
    assert all(set(entry) == {"owner", "public_tag"} for entry in payload["snodes"].values())
    assert {entry["public_tag"] for entry in payload["snodes"].values() if entry["owner"] == "alice"} == {"friend"}
    assert {entry["public_tag"] for entry in payload["snodes"].values() if entry["owner"] == "bob"} == {"poker face"}
    assert view.edges == frozenset(graph.edges)


def test_dot_counts_match_the_view():
    graph = SecretaryGraph()
    graph.setup_naive("alice", 6, 3, 6, ["family", "enemy", "rival"], seed=1)
    graph.setup_naive("bob", 6, 2, 6, ["business", "classmate"], seed=2)
    graph.connect("alice", "enemy", "bob", "classmate")
    dot = export_dot(graph.export_public_view())
    lines = dot.splitlines()
    assert lines[0] == 'graph "public" {' and lines[-1] == "}"
    assert sum(1 for line in lines if "[label=" in line) == 12
    assert sum(1 for line in lines if " -- " in line) == 1
    assert sum(1 for line in lines if line.strip().startswith("subgraph")) == 2
    for text in _private_strings(graph):
        assert text not in dot


def test_no_private_string_survives_projection():
    for seed in range(1000):
        graph = _random_graph(seed)
        view = graph.export_public_view()
        public_json = serialize_view(view).decode("utf-8")
        dot = export_dot(view)
        for text in _private_strings(graph):
            assert text not in public_json, (seed, text)
            assert text not in dot, (seed, text)
        owners = {}
        for owner, tag in view.snodes.values():
            owners.setdefault(owner, set()).add(tag)
        assert all(len(tags) == 1 for tags in owners.values())
