"""Seeker, passive-collusion and active (sybil probe) attacks.

Attacks never modify the graph they are given. The active attack works on a
deep copy because probing means creating real connections.
"""

from __future__ import annotations

import copy
import logging
from collections import Counter
from fractions import Fraction
from statistics import fmean
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import chisquare

from adversary.knowledge import gather_knowledge, hypothesis_for, pinned_labels
from adversary.models import (
    EXACT,
    NO_INFERENCE,
    PRIOR,
    Active,
    AttackReport,
    Hypothesis,
    InferenceResult,
    Knowledge,
    Passive,
    Seeker,
)
from adversary.oracle import DEFAULT_ENUMERATION_CAP, DEFAULT_EXACT_LIMIT, assignment_count
from secretaries.config import Settings
from secretaries.errors import InconsistentKnowledge, SelfConnection, ThresholdExceeded
from secretaries.graph import SecretaryGraph
from secretaries.models import Edge, GroupKey, PublicView, User
from secretaries.rng import derive_seed, make_rng

logger = logging.getLogger(__name__)

TargetPolicy = Callable[[User, np.random.Generator], GroupKey]

SYBIL_LABEL = "probe"


def uniform_policy(target: User, rng: np.random.Generator) -> GroupKey:
    """Target files a stranger under one of its groups chosen uniformly."""
    return target.groups[int(rng.integers(len(target.groups)))].key


def closed_form_posterior(snode: str, hypothesis: Hypothesis, pins: Dict[str, str], snode_total: int) -> Dict[str, float]:
    """Posterior of one target snode given pinned snodes.

    Assignments are uniform over label layouts with the hypothesised sizes,
    so an unpinned snode takes label ``L`` with probability
    ``(size_L - pinned_L) / unpinned``.
    """
    pinned = Counter(pins.values())
    remaining = {label: hypothesis.sizes[label] - pinned[label] for label in hypothesis.labels}
    if any(count < 0 for count in remaining.values()):
        raise InconsistentKnowledge("Learned labels exceed the hypothesised group sizes")
    if snode in pins:
        return {label: 1.0 if label == pins[snode] else 0.0 for label in hypothesis.labels}
    free = snode_total - len(pins)
    return {label: float(Fraction(count, free)) for label, count in remaining.items()}


def infer_target(
    view: PublicView,
    knowledge: Knowledge,
    target: str,
    hypothesis: Hypothesis,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> Tuple[List[InferenceResult], List[List[Edge]]]:
    """Posteriors for every coalition edge on ``target`` plus the co-membership clusters.

    Targets over ``exact_limit`` snodes or ``enumeration_cap`` label layouts get
    no inference.
    """
    snodes = view.snodes_of(target)
    if hypothesis.total != len(snodes):
        raise InconsistentKnowledge(f"Hypothesis for {target!r} does not match its {len(snodes)} snodes")
    clusters = knowledge.contacted(target)
    pins = pinned_labels(view, knowledge, target, hypothesis)
    results: List[InferenceResult] = []
    exact = len(snodes) <= exact_limit and assignment_count(hypothesis.sizes) <= enumeration_cap
    if not exact:
        logger.warning(
            "%s is over the exact limit %d or enumeration cap %d; no inference", target, exact_limit, enumeration_cap
        )
    for snode, edges in clusters.items():
        if exact:
            posterior, method = closed_form_posterior(snode, hypothesis, pins, len(snodes)), EXACT
        else:
            share = 1.0 / hypothesis.type_count
            posterior, method = {label: share for label in hypothesis.labels}, NO_INFERENCE
        results.extend(InferenceResult.from_posterior(edge, target, posterior, method) for edge in edges)
    return results, [edges for edges in clusters.values() if len(edges) > 1]


def _two_stage_reference(user: User) -> float:
    return 1.0 / (len(user.groups) * user.snode_count)


def _summarise(report: AttackReport, graph: SecretaryGraph) -> AttackReport:
    if not report.per_edge:
        report.analytic_reference = {"two_stage": None, "type_only": None}
        return report
    hits = [graph.group_of_edge(result.edge, result.target).label == result.guess for result in report.per_edge]
    report.success_rate = sum(hits) / len(hits)
    report.expected_success = fmean(result.posterior[result.guess] for result in report.per_edge)
    users = [graph.users[result.target] for result in report.per_edge]
    report.analytic_reference = {
        "two_stage": fmean(_two_stage_reference(user) for user in users),
        "type_only": fmean(1.0 / user.type_count for user in users),
    }
    return report


# ---------------------------------------------------------------------------
# Attacks
# ---------------------------------------------------------------------------


def seeker_attack(view: PublicView, labels: Sequence[str], graph: Optional[SecretaryGraph] = None, seed: int = 0) -> AttackReport:
    """Prior-only guesses for both sides of every public edge.

    A seeker sees nothing private, so every posterior is flat over ``labels``.
    ``graph`` is used only to score the guesses.
    """
    universe = sorted(set(labels))
    report = AttackReport(model=Seeker.name, seed=seed)
    if universe:
        flat = {label: 1.0 / len(universe) for label in universe}
        for edge in sorted(view.edges):
            for target in sorted({view.owner(edge.a), view.owner(edge.b)}):
                report.per_edge.append(InferenceResult.from_posterior(edge, target, flat, PRIOR))
    if graph is not None:
        _summarise(report, graph)
    return report


def passive_collusion_attack(
    graph: SecretaryGraph,
    coalition: Iterable[str],
    seed: int = 0,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    disclosed: Iterable[Edge] = (),
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> AttackReport:
    kind = Passive(frozenset(coalition))
    knowledge = gather_knowledge(graph, kind.coalition, disclosed)
    view = knowledge.public
    targets = sorted(
        {view.owner(contact.target_snode) for contacts in knowledge.contacts.values() for contact in contacts}
        - kind.coalition
    )
    report = AttackReport(model=Passive.name, seed=seed)
    for target in targets:
        results, clusters = infer_target(
            view, knowledge, target, hypothesis_for(graph, target), exact_limit, enumeration_cap
        )
        report.per_edge.extend(results)
        report.co_membership.extend(clusters)
    _summarise(report, graph)
    logger.info(
        "passive coalition of %d: %d target edges, success rate %.4f",
        len(kind.coalition),
        len(report.per_edge),
        report.success_rate,
    )
    return report


def active_attack(
    graph: SecretaryGraph,
    attacker: str,
    target: str,
    probes: int,
    seed: int = 0,
    target_policy: Optional[TargetPolicy] = None,
    settings: Optional[Settings] = None,
) -> AttackReport:
    """Probe ``target`` through ``probes`` fresh sybils of ``attacker`` and read the outcome."""
    settings = settings or Settings()
    kind = Active(attacker, probes)
    graph.user(attacker)
    victim = graph.user(target)
    if attacker == target:
        raise SelfConnection(f"Attacker {attacker!r} cannot probe itself")
    if probes > settings.max_active_probes:
        raise ThresholdExceeded(f"{probes} probes exceed the limit of {settings.max_active_probes}")

    work = copy.deepcopy(graph)
    policy = target_policy or uniform_policy
    rng = make_rng(seed)
    sybils: List[str] = []
    hits: Counter = Counter()
    for index in range(kind.probes):
        sybil = f"{attacker}~sybil{index}"
        while sybil in work.users:
            sybil += "~"
        work.setup_naive(sybil, 1, 1, 1, [SYBIL_LABEL], derive_seed(seed, index))
        edge = work.connect(sybil, GroupKey(SYBIL_LABEL), target, policy(work.users[target], rng))
        hits[work.endpoint_of(edge, target)] += 1
        sybils.append(sybil)

    report = AttackReport(model=Active.name, seed=seed, histogram=dict(hits))
    report.uniformity = _uniformity([hits[snode] for snode in sorted(victim.snodes())])
    if sybils:
        knowledge = gather_knowledge(work, sybils)
        results, clusters = infer_target(
            knowledge.public,
            knowledge,
            target,
            hypothesis_for(work, target),
            settings.exact_limit,
            settings.enumeration_cap,
        )
        report.per_edge.extend(results)
        report.co_membership.extend(clusters)
    _summarise(report, work)
    logger.info("active probe of %s with %d sybils, success rate %.4f", target, probes, report.success_rate)
    return report


def _uniformity(counts: Sequence[int]) -> Dict[str, float]:
    if not counts or min(counts) == max(counts):
        return {"chi_square": 0.0, "p_value": 1.0}
    result = chisquare(counts)
    return {"chi_square": float(result.statistic), "p_value": float(result.pvalue)}
