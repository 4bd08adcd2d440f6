"""Scenario files: schema, parsing and reference checks.

A scenario is one JSON document describing users to set up, connections to
make, policy entries and attacks to run. Everything is checked before the
first operation executes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Literal, Optional, Set

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from access_control.permissions import Permission
from secretaries.errors import MalformedInput, ScenarioParseError, ScenarioValidationError
from secretaries.models import ADVANCED, NAIVE, GroupKey


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GroupEntry(_Strict):
    label: str
    capacity: int = Field(ge=1)
    instance: int = Field(default=1, ge=1)
    subtype: Optional[str] = None

    @property
    def key(self) -> GroupKey:
        return GroupKey(self.label, self.instance, self.subtype)


class UserSetup(_Strict):
    id: str
    scheme: Literal["naive", "advanced"] = NAIVE
    threshold: int = Field(ge=1)
    snodes: Optional[int] = Field(default=None, ge=1)
    types: List[str] = Field(default_factory=list)
    groups: List[GroupEntry] = Field(default_factory=list)
    public_tag: Optional[str] = None

    @model_validator(mode="after")
    def _scheme_fields(self) -> "UserSetup":
        if self.scheme == NAIVE:
            if self.snodes is None:
                raise ValueError("naive users need 'snodes'")
            if self.groups:
                raise ValueError("naive users take 'types', not 'groups'")
        elif self.types or self.snodes is not None:
            raise ValueError("advanced users take 'groups' only")
        return self

    def declared_groups(self) -> Set[GroupKey]:
        if self.scheme == ADVANCED:
            return {entry.key for entry in self.groups}
        return {GroupKey(label) for label in self.types}


class ConnectionStep(_Strict):
    requester: str
    requester_group: str
    target: str
    target_group: str


class PolicyEntry(_Strict):
    owner: str
    # No group means the entry sets the owner's guest permissions.
    group: Optional[str] = None
    permissions: List[Permission] = Field(default_factory=list)


class AttackStep(_Strict):
    model: Literal["seeker", "passive", "active"]
    coalition: List[str] = Field(default_factory=list)
    attacker: Optional[str] = None
    target: Optional[str] = None
    probes: int = Field(default=0, ge=0)
    seed: Optional[int] = None
    exact_limit: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _model_fields(self) -> "AttackStep":
        if self.model == "passive" and not self.coalition:
            raise ValueError("passive attacks need a non-empty 'coalition'")
        if self.model == "active" and (self.attacker is None or self.target is None):
            raise ValueError("active attacks need 'attacker' and 'target'")
        return self


class Scenario(_Strict):
    seed: int = 0
    # Falls back to the configured public tag when absent.
    public_tag: Optional[str] = None
    users: List[UserSetup] = Field(default_factory=list)
    connections: List[ConnectionStep] = Field(default_factory=list)
    policies: List[PolicyEntry] = Field(default_factory=list)
    attacks: List[AttackStep] = Field(default_factory=list)


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def _check_group(problems: List[str], where: str, groups: Dict[str, Set[GroupKey]], user: str, raw: str) -> None:
    try:
        key = GroupKey.parse(raw)
    except MalformedInput as exc:
        problems.append(f"{where}: {exc}")
        return
    if user in groups and key not in groups[user]:
        problems.append(f"{where}: user {user!r} declares no group {raw!r}")


def reference_problems(scenario: Scenario) -> List[str]:
    """Every dangling user or group reference in ``scenario``."""
    groups = {user.id: user.declared_groups() for user in scenario.users}
    problems: List[str] = []

    def known(where: str, user: Optional[str]) -> None:
        if user is not None and user not in groups:
            problems.append(f"{where}: unknown user {user!r}")

    for index, step in enumerate(scenario.connections):
        where = f"connections[{index}]"
        known(where, step.requester)
        known(where, step.target)
        _check_group(problems, where, groups, step.requester, step.requester_group)
        _check_group(problems, where, groups, step.target, step.target_group)
    for index, entry in enumerate(scenario.policies):
        where = f"policies[{index}]"
        known(where, entry.owner)
        if entry.group is not None:
            _check_group(problems, where, groups, entry.owner, entry.group)
    for index, attack in enumerate(scenario.attacks):
        where = f"attacks[{index}]"
        for member in attack.coalition:
            known(where, member)
        known(where, attack.attacker)
        known(where, attack.target)
    return problems


def parse_scenario(text: str | bytes) -> Scenario:
    try:
        payload = json.loads(text)
    except (ValueError, UnicodeDecodeError) as exc:
        raise ScenarioParseError(f"Scenario is not valid JSON: {exc}") from exc
    try:
        scenario = Scenario.model_validate(payload)
    except ValidationError as exc:
        raise ScenarioValidationError(f"Scenario does not match the schema:\n{exc}") from exc
    problems = reference_problems(scenario)
    if problems:
        raise ScenarioValidationError("Scenario has unresolved references:\n" + "\n".join(problems))
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise ScenarioParseError(f"Cannot read scenario {path}: {exc}") from exc
    return parse_scenario(text)
