# Unit test for the exact and sampled posterior oracles
import pytest

from adversary.attacks import passive_collusion_attack
from adversary.knowledge import gather_knowledge, hypothesis_for
from adversary.models import EXACT, MONTECARLO, Hypothesis, Knowledge
from adversary.oracle import assignment_count, enumerate_posterior, sample_posterior
from secretaries.errors import InconsistentKnowledge, TooLarge
from secretaries.generators import random_network
from secretaries.graph import SecretaryGraph
from secretaries.rng import make_rng


def _single_spy():
    graph = SecretaryGraph()
    graph.setup_naive("target", 6, 3, 6, ["family", "enemy", "rival"], seed=1)
    graph.setup_naive("spy", 1, 1, 1, ["business"], seed=2)
    edge = graph.connect("spy", "business", "target", "enemy")
    return graph, edge


def _family_cluster():
    """Three spies share the target's only family snode; a fourth sits on an enemy snode."""
    graph = SecretaryGraph()
    graph.setup_advanced("target", [("family", 1, 1), ("enemy", 1, 2), ("rival", 1, 3)], 6, seed=5)
    edges = []
    for index, group in enumerate(["family", "family", "family", "enemy"]):
        graph.setup_naive(f"spy{index}", 1, 1, 1, ["business"], seed=index)
        edges.append(graph.connect(f"spy{index}", "business", "target", group))
    return graph, edges


def test_assignment_count():
    assert assignment_count({"a": 2, "b": 2, "c": 2}) == 90
    assert assignment_count({"a": 1, "b": 2, "c": 3}) == 60


def test_single_edge_gives_uniform_posterior():
    graph, edge = _single_spy()
    knowledge = gather_knowledge(graph, ["spy"])
    result = enumerate_posterior(knowledge.public, knowledge, "target", edge, hypothesis_for(graph, "target"))
    assert result.posterior == {"enemy": 1 / 3, "family": 1 / 3, "rival": 1 / 3}
    assert result.method == EXACT
    assert result.guess == "enemy"
    report = passive_collusion_attack(graph, ["spy"])
    assert [item.posterior for item in report.per_edge] == [result.posterior]
    assert report.co_membership == []


def test_shared_snode_edges_read_one_label():
    graph, edges = _family_cluster()
    spies = ["spy0", "spy1", "spy2"]
    report = passive_collusion_attack(graph, spies)
    assert report.co_membership == [sorted(edges[:3])]
    assert len({tuple(item.posterior.items()) for item in report.per_edge}) == 1
    assert len({item.guess for item in report.per_edge}) == 1


def test_learned_label_pins_every_edge_on_the_snode():
    graph, edges = _family_cluster()
    spies = ["spy0", "spy1", "spy2", "spy3"]
    knowledge = gather_knowledge(graph, spies, disclosed=[edges[0]])
    assert knowledge.learned == {edges[0]: "family"}
    hypothesis = hypothesis_for(graph, "target")
    for edge in edges[:3]:
        result = enumerate_posterior(knowledge.public, knowledge, "target", edge, hypothesis)
        assert result.posterior == {"enemy": 0.0, "family": 1.0, "rival": 0.0}
    other = enumerate_posterior(knowledge.public, knowledge, "target", edges[3], hypothesis)
    assert other.posterior == {"enemy": 2 / 5, "family": 0.0, "rival": 3 / 5}

    report = passive_collusion_attack(graph, spies, disclosed=[edges[0]])
    assert report.success_rate == 0.75
    assert {item.edge: item.guess for item in report.per_edge}[edges[3]] == "rival"


def test_inconsistent_knowledge_is_rejected():
    graph, edges = _family_cluster()
    public = graph.export_public_view()
    hypothesis = hypothesis_for(graph, "target")
    unknown_label = Knowledge(public=public, learned={edges[0]: "colleague"})
    with pytest.raises(InconsistentKnowledge):
        enumerate_posterior(public, unknown_label, "target", edges[0], hypothesis)
    conflicting = Knowledge(public=public, learned={edges[0]: "family", edges[1]: "enemy"})
    with pytest.raises(InconsistentKnowledge):
        enumerate_posterior(public, conflicting, "target", edges[0], hypothesis)
    overfull = Knowledge(public=public, learned={edges[0]: "family", edges[3]: "family"})
    with pytest.raises(InconsistentKnowledge):
        enumerate_posterior(public, overfull, "target", edges[1], hypothesis)
    wrong_size = Hypothesis(type_count=3, sizes={"family": 1, "enemy": 1, "rival": 1})
    with pytest.raises(InconsistentKnowledge):
        enumerate_posterior(public, Knowledge(public=public), "target", edges[0], wrong_size)


def test_enumeration_respects_size_guard():
    graph, edge = _single_spy()
    knowledge = gather_knowledge(graph, ["spy"])
    hypothesis = hypothesis_for(graph, "target")
    with pytest.raises(TooLarge):
        enumerate_posterior(knowledge.public, knowledge, "target", edge, hypothesis, exact_limit=4)
    with pytest.raises(TooLarge):
        enumerate_posterior(knowledge.public, knowledge, "target", edge, hypothesis, enumeration_cap=50)


def test_attack_posteriors_equal_brute_force_on_random_graphs():
    checked = 0
    for seed in range(50):
        rng = make_rng(seed, 7)
        snodes = int(rng.integers(3, 11))
        types = int(rng.integers(1, min(snodes, 3) + 1))
        graph = random_network(6, snodes, types, 1.0, seed)
        coalition = ["user000", "user001"]
        own_edges = sorted(edge for member in coalition for edge in graph.edges_of(member))
        disclosed = [edge for edge in own_edges if rng.random() < 0.3]
        report = passive_collusion_attack(graph, coalition, seed, disclosed=disclosed)
        knowledge = gather_knowledge(graph, coalition, disclosed)
        for result in report.per_edge:
            oracle = enumerate_posterior(
                knowledge.public, knowledge, result.target, result.edge, hypothesis_for(graph, result.target)
            )
            assert oracle.posterior == result.posterior
            assert oracle.guess == result.guess
            checked += 1
    assert checked > 50


def test_sampled_posterior_tracks_the_exact_one():
    graph, edges = _family_cluster()
    knowledge = gather_knowledge(graph, ["spy0", "spy3"], disclosed=[edges[0]])
    hypothesis = hypothesis_for(graph, "target")
    exact = enumerate_posterior(knowledge.public, knowledge, "target", edges[3], hypothesis)
    sampled = sample_posterior(knowledge.public, knowledge, "target", edges[3], hypothesis, 20_000, seed=3)
    assert sampled.method == MONTECARLO
    assert set(sampled.posterior) == set(exact.posterior)
    for label, probability in exact.posterior.items():
        assert abs(sampled.posterior[label] - probability) < 0.04
    assert sampled == sample_posterior(knowledge.public, knowledge, "target", edges[3], hypothesis, 20_000, seed=3)
