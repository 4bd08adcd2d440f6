# Unit test for scenario parsing and the scenario runner
import json
from pathlib import Path

import pytest

from access_control.permissions import Permission
from secretaries.config import Settings
from secretaries.errors import ScenarioParseError, ScenarioRuntimeError, ScenarioValidationError
from tools.outputs import directory_digest, read_outputs
from tools.runner import PHASES, ScenarioRunner, render_outputs, write_outputs
from tools.scenario import load_scenario, parse_scenario

DATA = Path(__file__).parent / "data"
ALICE_AND_BOB = json.loads((DATA / "alice_and_bob.json").read_text(encoding="utf-8"))


def _scenario_text(**changes):
    payload = dict(ALICE_AND_BOB)
    payload.update(changes)
    return json.dumps(payload)


def test_parse_scenario_defaults():
    scenario = parse_scenario(b"{}")
    assert scenario.seed == 0
    assert scenario.public_tag is None
    assert scenario.users == [] and scenario.attacks == []


def test_parse_scenario_rejects_bad_documents():
    with pytest.raises(ScenarioParseError):
        parse_scenario("{not json")
    with pytest.raises(ScenarioValidationError):
        parse_scenario(_scenario_text(extra=1))
    with pytest.raises(ScenarioValidationError):
        parse_scenario(json.dumps({"users": [{"id": "x", "threshold": 2, "snodes": 2, "groups": [{"label": "a", "capacity": 1}]}]}))
    with pytest.raises(ScenarioValidationError):
        parse_scenario(json.dumps({"users": [{"id": "x", "scheme": "advanced", "threshold": 2, "snodes": 2}]}))
    with pytest.raises(ScenarioValidationError):
        parse_scenario(_scenario_text(attacks=[{"model": "passive"}]))
    with pytest.raises(ScenarioValidationError):
        parse_scenario(_scenario_text(policies=[{"owner": "alice", "permissions": ["ViewEverything"]}]))


def test_parse_scenario_reports_dangling_references():
    connections = [{"requester": "zoe", "requester_group": "business", "target": "alice", "target_group": "friend#3"}]
    with pytest.raises(ScenarioValidationError) as info:
        parse_scenario(_scenario_text(connections=connections))
    assert "unknown user 'zoe'" in str(info.value)
    assert "declares no group 'friend#3'" in str(info.value)
    with pytest.raises(ScenarioValidationError):
        parse_scenario(_scenario_text(attacks=[{"model": "active", "attacker": "bob", "target": "zoe"}]))
    with pytest.raises(ScenarioValidationError):
        parse_scenario(_scenario_text(policies=[{"owner": "alice", "group": "friend#two", "permissions": []}]))


def test_load_scenario_missing_file(tmp_path):
    with pytest.raises(ScenarioParseError):
        load_scenario(tmp_path / "missing.json")


def test_runner_builds_the_alice_and_bob_network():
    state = ScenarioRunner().run(parse_scenario(_scenario_text()))
    graph = state.graph
    assert sorted(graph.users) == ["alice", "bob", "carol"]
    assert len(graph.edges) == 2
    assert graph.group_of_edge(graph.edge_between("alice", "bob"), "alice").encode() == "friend#1"
    assert graph.group_of_edge(graph.edge_between("alice", "carol"), "alice").encode() == "friend#2"
    assert state.access.evaluate("alice", "bob") == {Permission.ViewPhotos, Permission.ViewMemberList}
    assert state.access.evaluate("alice", "carol") == frozenset()
    assert state.access.evaluate("alice", "stranger") == frozenset()
    assert state.access.members("alice", "bob") == {"bob"}
    assert [report.model for report in state.attacks] == ["passive", "seeker", "active"]
    assert len(state.attacks[0].per_edge) == 2
    assert sum(state.attacks[2].histogram.values()) == 20


def test_runner_plan_follows_phase_order():
    runner = ScenarioRunner()
    scenario = parse_scenario(_scenario_text())
    descriptions = [description for description, _ in runner.plan(scenario)]
    assert descriptions[:3] == ["setup alice", "setup bob", "setup carol"]
    assert descriptions[3] == "connect bob -> alice"
    assert descriptions[-1] == "attack active"
    assert len(descriptions) == 10
    assert [d for d, _ in runner.plan(scenario, phases=("attacks", "setup"))][:3] == descriptions[:3]
    with pytest.raises(ValueError):
        runner.plan(scenario, phases=("teardown",))
    assert PHASES == ("setup", "connections", "policies", "attacks")


def test_runtime_failure_names_the_operation():
    connections = ALICE_AND_BOB["connections"] + [ALICE_AND_BOB["connections"][0]]
    with pytest.raises(ScenarioRuntimeError) as info:
        ScenarioRunner().run(parse_scenario(_scenario_text(connections=connections)))
    assert info.value.index == 5
    assert info.value.operation == "connect bob -> alice"
    assert type(info.value.cause).__name__ == "DuplicatePair"


def test_outputs_keep_private_labels_out_of_public_files():
    files = render_outputs(ScenarioRunner().run(parse_scenario(_scenario_text())))
    assert set(files) == {
        "graph.json",
        "public.json",
        "public.dot",
        "metrics.json",
        "policies.json",
        "attack-0.json",
        "attack-1.json",
        "attack-2.json",
    }
    for name in ("public.json", "public.dot"):
        for label in (b"friend", b"enemy", b"family", b"business", b"rival"):
            assert label not in files[name]
    assert b'"friend#1"' in files["policies.json"]


def test_empty_scenario_writes_empty_outputs(tmp_path):
    state = ScenarioRunner().run(parse_scenario(b"{}"))
    write_outputs(state, tmp_path)
    outputs = read_outputs(tmp_path)
    assert outputs["graph"]["users"] == {} and outputs["graph"]["edges"] == []
    assert outputs["public"] == {"version": 1, "users": [], "snodes": {}, "edges": []}
    assert outputs["dot"] == 'graph "public" {\n}\n'
    assert outputs["policies"] == {"version": 1, "policies": []}
    assert outputs["metrics"]["params"] is None
    assert outputs["attacks"] == []


def test_same_seed_gives_identical_output_directories(tmp_path):
    scenario = parse_scenario(_scenario_text())
    for name in ("first", "second"):
        write_outputs(ScenarioRunner().run(scenario), tmp_path / name)
    assert directory_digest(tmp_path / "first") == directory_digest(tmp_path / "second")
    write_outputs(ScenarioRunner().run(parse_scenario(_scenario_text(seed=43))), tmp_path / "third")
    assert directory_digest(tmp_path / "third") != directory_digest(tmp_path / "first")


def test_settings_public_tag_applies_when_the_scenario_has_none():
    scenario = parse_scenario(json.dumps({"users": [{"id": "dan", "threshold": 2, "snodes": 2, "types": ["a", "b"]}]}))
    graph = ScenarioRunner(Settings(public_tag="poker face")).run(scenario).graph
    assert graph.public_tag == "poker face"
    assert graph.users["dan"].public_tag == "poker face"
    tagged = parse_scenario(_scenario_text())
    assert ScenarioRunner(Settings(public_tag="poker face")).run(tagged).graph.public_tag == "member"


def test_rewriting_a_directory_drops_stale_attack_reports(tmp_path):
    write_outputs(ScenarioRunner().run(parse_scenario(_scenario_text())), tmp_path / "reused")
    fewer = parse_scenario(_scenario_text(attacks=ALICE_AND_BOB["attacks"][:1]))
    write_outputs(ScenarioRunner().run(fewer), tmp_path / "reused")
    write_outputs(ScenarioRunner().run(fewer), tmp_path / "fresh")
    assert sorted(path.name for path in (tmp_path / "reused").glob("attack-*.json")) == ["attack-0.json"]
    assert directory_digest(tmp_path / "reused") == directory_digest(tmp_path / "fresh")


def test_acquaintance_and_competitor_show_as_one_plain_edge(tmp_path):
    write_outputs(ScenarioRunner().run(load_scenario(DATA / "acquaintance_and_competitor.json")), tmp_path)
    public = read_outputs(tmp_path)["public"]
    ((left, right),) = public["edges"]
    assert {public["snodes"][left]["owner"], public["snodes"][right]["owner"]} == {"alice", "bob"}
    assert public["snodes"][left]["public_tag"] == public["snodes"][right]["public_tag"] == "friend"
    text = (tmp_path / "public.json").read_bytes()
    assert b"acquaintance" not in text and b"competitor" not in text

    graph = read_outputs(tmp_path)["graph"]
    groups = {graph["secretaries"][sid]["group"] for sid in (left, right)}
    assert groups == {"acquaintance#1", "competitor#1"}
