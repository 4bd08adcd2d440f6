"""Build coalition knowledge from members' local state."""

from __future__ import annotations

from typing import Dict, Iterable

from adversary.models import Contact, Hypothesis, Knowledge
from secretaries.errors import InconsistentKnowledge
from secretaries.graph import SecretaryGraph
from secretaries.models import Edge, PublicView


def gather_knowledge(graph: SecretaryGraph, coalition: Iterable[str], disclosed: Iterable[Edge] = ()) -> Knowledge:
    """Pool what the members know: their own edges, own group choices, and any disclosed far-side labels."""
    members = sorted(set(coalition))
    contacts: Dict[str, list] = {}
    for member in members:
        graph.user(member)
        own = []
        for edge in graph.edges_of(member):
            near = graph.endpoint_of(edge, member)
            own.append(Contact(edge, edge.other(near), graph.secretaries[near].group))
        contacts[member] = own

    learned: Dict[Edge, str] = {}
    for edge in disclosed:
        owners = {graph.secretaries[snode].owner: snode for snode in edge.endpoints()}
        outsiders = [snode for owner, snode in owners.items() if owner not in members]
        if len(outsiders) == 1 and len(owners) == 2:
            learned[edge] = graph.secretaries[outsiders[0]].group.label
    return Knowledge(public=graph.export_public_view(), contacts=contacts, learned=learned)


def hypothesis_for(graph: SecretaryGraph, user_id: str) -> Hypothesis:
    """The target's true label set and per-label snode counts (worst-case prior knowledge)."""
    sizes = graph.user(user_id).label_sizes()
    return Hypothesis(type_count=len(sizes), sizes=sizes)


def pinned_labels(view: PublicView, knowledge: Knowledge, target: str, hypothesis: Hypothesis) -> Dict[str, str]:
    """Target snodes whose label the coalition has learned.

    Every edge on a snode shares that snode's single private tag, so two
    learned edges on one snode must agree.
    """
    pins: Dict[str, str] = {}
    for edge, label in sorted(knowledge.learned.items()):
        sides = [snode for snode in edge.endpoints() if view.owner(snode) == target]
        if not sides:
            continue
        snode = sides[0]
        if label not in hypothesis.sizes:
            raise InconsistentKnowledge(f"Learned label {label!r} is not in the hypothesis for {target!r}")
        if pins.setdefault(snode, label) != label:
            raise InconsistentKnowledge(f"Snode {snode!r} was learned with two different labels")
    return pins
