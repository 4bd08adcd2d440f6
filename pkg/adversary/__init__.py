"""Threat-model simulation: seekers, passive coalitions and active probers."""

from adversary.attacks import active_attack, passive_collusion_attack, seeker_attack
from adversary.knowledge import gather_knowledge, hypothesis_for
from adversary.models import Active, AttackReport, Hypothesis, InferenceResult, Knowledge, Passive, Seeker
from adversary.montecarlo import simulate_two_stage_guess
from adversary.oracle import enumerate_posterior, sample_posterior

__all__ = [
    "Active",
    "AttackReport",
    "Hypothesis",
    "InferenceResult",
    "Knowledge",
    "Passive",
    "Seeker",
    "active_attack",
    "enumerate_posterior",
    "gather_knowledge",
    "hypothesis_for",
    "passive_collusion_attack",
    "sample_posterior",
    "seeker_attack",
    "simulate_two_stage_guess",
]
