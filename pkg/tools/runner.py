"""Scenario runner: replays a scenario against a fresh graph and writes the results.

Work happens in four phases, always in this order:

1. setup        every declared user gets its secretaries
2. connections  each listed request is made and accepted
3. policies     guest sets and per-group entries are installed
4. attacks      each configured adversary runs against the finished graph

Operations are numbered across phases from zero; the first failing one
aborts the run and is reported by that number.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from access_control.engine import AccessControl
from adversary.attacks import active_attack, passive_collusion_attack, seeker_attack
from adversary.models import AttackReport
from privacy_analysis.load import metrics_report
from secretaries.config import Settings
from secretaries.errors import ScenarioRuntimeError, SecretaryGraphError
from secretaries.graph import GroupSpec, SecretaryGraph
from secretaries.models import ADVANCED, GroupKey
from secretaries.rng import derive_seed
from tools.dot_export import export_dot
from tools.outputs import attack_files
from tools.scenario import AttackStep, PolicyEntry, Scenario, UserSetup
from tools.serialization import canonical_json, serialize_graph, serialize_policies, serialize_view

logger = logging.getLogger(__name__)

PHASES: Tuple[str, ...] = ("setup", "connections", "policies", "attacks")

# Salts keeping per-user and per-attack seeds apart.
_SETUP_SALT = 1
_ATTACK_SALT = 2

Operation = Tuple[str, Callable[["RunState"], None]]


@dataclass
class RunState:
    graph: SecretaryGraph
    access: AccessControl
    attacks: List[AttackReport] = field(default_factory=list)


class ScenarioRunner:
    """Turns a validated scenario into a graph, policies and attack reports."""

    def __init__(self, settings: Optional[Settings] = None) -> None:
        self.settings = settings or Settings()

    def new_state(self, scenario: Scenario, graph: Optional[SecretaryGraph] = None) -> RunState:
        graph = graph or SecretaryGraph(seed=scenario.seed, public_tag=scenario.public_tag or self.settings.public_tag)
        return RunState(graph=graph, access=AccessControl(graph, self.settings))

    # ------------------------------------------------------------------ #
    # Planning
    # ------------------------------------------------------------------ #
    def plan(self, scenario: Scenario, phases: Sequence[str] = PHASES) -> List[Operation]:
        builders = {
            "setup": lambda: [self._setup_op(scenario, index, user) for index, user in enumerate(scenario.users)],
            "connections": lambda: [
                (
                    f"connect {step.requester} -> {step.target}",
                    lambda state, step=step: state.graph.connect(
                        step.requester, step.requester_group, step.target, step.target_group
                    ),
                )
                for step in scenario.connections
            ],
            "policies": lambda: [self._policy_op(entry) for entry in scenario.policies],
            "attacks": lambda: [self._attack_op(scenario, index, attack) for index, attack in enumerate(scenario.attacks)],
        }
        unknown = [phase for phase in phases if phase not in builders]
        if unknown:
            raise ValueError(f"Unknown scenario phase(s): {', '.join(unknown)}")
        operations: List[Operation] = []
        for phase in PHASES:
            if phase in phases:
                operations.extend(builders[phase]())
        return operations

    def _setup_op(self, scenario: Scenario, index: int, user: UserSetup) -> Operation:
        seed = derive_seed(scenario.seed, _SETUP_SALT, index)

        def run(state: RunState) -> None:
            if user.scheme == ADVANCED:
                spec = [GroupSpec(entry.label, entry.instance, entry.capacity, entry.subtype) for entry in user.groups]
                state.graph.setup_advanced(user.id, spec, user.threshold, seed, user.public_tag)
            else:
                state.graph.setup_naive(
                    user.id, user.snodes, len(user.types), user.threshold, user.types, seed, user.public_tag
                )

        return f"setup {user.id}", run

    def _policy_op(self, entry: PolicyEntry) -> Operation:
        def run(state: RunState) -> None:
            if entry.group is None:
                state.access.set_guest(entry.owner, entry.permissions)
            else:
                state.access.set_policy(entry.owner, GroupKey.parse(entry.group), entry.permissions)

        target = "guest" if entry.group is None else "group entry"
        return f"policy {target} for {entry.owner}", run

    def _attack_op(self, scenario: Scenario, index: int, attack: AttackStep) -> Operation:
        seed = attack.seed if attack.seed is not None else derive_seed(scenario.seed, _ATTACK_SALT, index)
        limit = self.settings.exact_limit if attack.exact_limit is None else attack.exact_limit

        def run(state: RunState) -> None:
            graph = state.graph
            if attack.model == "seeker":
                labels = sorted({label for user in graph.users.values() for label in user.labels})
                report = seeker_attack(graph.export_public_view(), labels, graph, seed)
            elif attack.model == "passive":
                report = passive_collusion_attack(
                    graph, attack.coalition, seed, limit, enumeration_cap=self.settings.enumeration_cap
                )
            else:
                report = active_attack(
                    graph, attack.attacker, attack.target, attack.probes, seed,
                    settings=replace(self.settings, exact_limit=limit),
                )
            state.attacks.append(report)

        return f"attack {attack.model}", run

    # ------------------------------------------------------------------ #
    # Execution
    # ------------------------------------------------------------------ #
    def execute(self, operations: Sequence[Operation], state: RunState) -> RunState:
        for index, (description, action) in enumerate(operations):
            try:
                action(state)
            except SecretaryGraphError as exc:
                raise ScenarioRuntimeError(index, description, exc) from exc
        return state

    def run(self, scenario: Scenario, phases: Sequence[str] = PHASES, graph: Optional[SecretaryGraph] = None) -> RunState:
        state = self.new_state(scenario, graph)
        operations = self.plan(scenario, phases)
        logger.info("running %d operation(s) over phases %s", len(operations), ", ".join(phases))
        self.execute(operations, state)
        logger.info(
            "scenario done: %d users, %d edges, %d attack report(s)",
            len(state.graph.users),
            len(state.graph.edges),
            len(state.attacks),
        )
        return state


# ---------------------------------------------------------------------------
# Output directory
# ---------------------------------------------------------------------------


def render_outputs(state: RunState) -> Dict[str, bytes]:
    """File name to content for every artifact of a run."""
    view = state.graph.export_public_view()
    files = {
        "graph.json": serialize_graph(state.graph),
        "public.json": serialize_view(view),
        "public.dot": export_dot(view).encode("utf-8"),
        "metrics.json": canonical_json(metrics_report(state.graph)),
        "policies.json": serialize_policies(state.access.policies.values()),
    }
    for index, report in enumerate(state.attacks):
        files[f"attack-{index}.json"] = canonical_json(report.to_dict())
    _review_public_outputs(state.graph, [files["public.json"], files["public.dot"]])
    return files


def _review_public_outputs(graph: SecretaryGraph, documents: Sequence[bytes]) -> None:
    """Flag private strings that also show up in public documents."""
    public = {graph.public_tag} | set(graph.users) | {user.public_tag for user in graph.users.values()}
    private = set()
    for user in graph.users.values():
        for group in user.groups:
            private.update(text for text in (group.label, group.subtype, group.key.encode()) if text)
    overlaps = 0
    for text in private:
        if any(text in token for token in public):
            # The string is legitimately public as part of an id or tag.
            continue
        if any(text.encode("utf-8") in document for document in documents):
            overlaps += 1
    if overlaps:
        logger.warning("%d private label string(s) also appear in public output through snode ids", overlaps)


def write_outputs(state: RunState, out_dir: str | Path) -> Dict[str, Path]:
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    stale = attack_files(target)
    for path in stale:
        path.unlink()
    if stale:
        logger.debug("removed %d stale attack report(s) from %s", len(stale), target)
    written = {}
    for name, content in render_outputs(state).items():
        path = target / name
        path.write_bytes(content)
        written[name] = path
    logger.info("wrote %d file(s) to %s", len(written), target)
    return written
