"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from semrank.generator import GeneratorParams
from semrank.graph_model import CandidateEdge, CandidateEdgeSet, Environment, build_environment, pair_key

# Ten-page replay fixture: ontology triples (a, b, eta) and one
# row per listing line holding (a, b, delta) for pages P1..P10.
REPLAY_ONTOLOGY = (
    "2,0,5 4,1,5 0,5,5 0,3,5 4,5,5 5,2,5 1,0,5 4,3,5 2,3,5 5,1,5 1,3,5 2,1,5 3,5,5 4,0,5"
)
REPLAY_PAGES = (
    "2,0,2 5,2,2 5,2,2 0,3,0 0,2,1 5,1,3 1,5,4 4,0,4 1,3,1 0,5,3",
    "4,1,2 0,3,3 5,1,0 1,5,4 0,1,2 1,4,3 2,0,3 0,2,2 0,1,3 5,1,1",
    "0,5,3 1,0,2 3,0,3 3,2,4 3,1,3 2,3,3 3,0,1 0,1,1 0,4,3 1,0,3",
    "0,3,1 4,3,4 0,2,3 2,5,0 2,1,3 1,2,0 4,5,0 5,1,3 5,0,2 2,1,3",
    "4,5,4 2,3,0 5,0,3 1,3,2 1,5,2 0,3,4 3,5,4 2,1,2 5,2,1 1,3,3",
)


def _triples(text: str) -> list[tuple[int, int, int]]:
    out = []
    for tok in text.split():
        a, b, n = map(int, tok.split(","))
        out.append((*pair_key(a, b), n))
    return out


def replay_env() -> Environment:
    relations = []
    for a, b, eta in _triples(REPLAY_ONTOLOGY):
        relations += [(f"r{a}{b}_{k}", a, b) for k in range(eta)]
    pages: dict[str, list[str]] = {f"P{i + 1}": [] for i in range(10)}
    for row in REPLAY_PAGES:
        for i, (a, b, d) in enumerate(_triples(row)):
            pages[f"P{i + 1}"] += [f"r{a}{b}_{k}" for k in range(d)]
    return build_environment(
        [f"C{i}" for i in range(6)], relations, pages, query=[(f"t{i}", i) for i in range(6)]
    )


def replay_page_triples(page_index: int) -> list[tuple[int, int, int]]:
    """The (a, b, delta) entries listed for one page, zero deltas included."""
    return [_triples(row)[page_index] for row in REPLAY_PAGES]


def random_candidates(rng: random.Random, max_concepts: int = 7, max_edges: int = 12) -> CandidateEdgeSet:
    n = rng.randint(2, max_concepts)
    pairs = list(combinations(range(n), 2))
    chosen = rng.sample(pairs, rng.randint(0, min(max_edges, len(pairs))))
    edges = []
    for pair in chosen:
        eta = rng.randint(1, 4)
        edges.append(CandidateEdge(pair, Fraction(rng.randint(0, eta)), eta))
    return CandidateEdgeSet(tuple(edges))


def small_params(seed: int) -> GeneratorParams:
    """Cheap random generator settings derived from the seed."""
    rng = random.Random(seed)
    return GeneratorParams(
        seed=seed,
        concept_count=rng.randint(2, 6),
        ontology_pair_density=rng.choice([0.3, 0.5, 0.8, 1.0]),
        max_multiplicity=rng.randint(1, 4),
        page_count=rng.randint(1, 5),
        page_relation_rate=rng.choice([0.0, 0.2, 0.5]),
    )


def discordant_tau(order_a: list[str], order_b: list[str]) -> float:
    """Kendall tau from an explicit O(n^2) pair count (no ties possible)."""
    n = len(order_a)
    if n < 2:
        return 1.0
    pos_a = {p: i for i, p in enumerate(order_a)}
    pos_b = {p: i for i, p in enumerate(order_b)}
    concordant = discordant = 0
    for x, y in combinations(order_a, 2):
        s = (pos_a[x] - pos_a[y]) * (pos_b[x] - pos_b[y])
        if s > 0:
            concordant += 1
        else:
            discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)
