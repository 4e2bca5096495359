"""Full-page scoring with virtual links and node/edge bonus fractions.

Unlike the query-restricted baseline, every concept on the page stays in
scope.  Where the ontology relates two page concepts but the page itself
does not, a weakened "virtual" edge is added so that separate components
can still be joined into one longer tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from semrank.errors import ValidationError
from semrank.graph_model import (
    VIRTUAL,
    CandidateEdge,
    CandidateEdgeSet,
    OntologyGraph,
    PageSubgraph,
    page_candidates,
)
from semrank.relation_ranker import Method, ScoredPage, score_candidates


class VirtualMode(str, Enum):
    CONSTANT_HALF = "constant-half"
    HALF_OVER_PAGE = "half-over-page"


@dataclass(frozen=True)
class VirtualConfig:
    virtual_delta_mode: VirtualMode = VirtualMode.CONSTANT_HALF

    def virtual_delta(self, page: PageSubgraph) -> Fraction:
        if self.virtual_delta_mode is VirtualMode.HALF_OVER_PAGE:
            return Fraction(1, 2) / max(1, len(page.relation_ids))
        return Fraction(1, 2)


DEFAULT_CONFIG = VirtualConfig()

VARIANTS = (Method.BASE, Method.NODES, Method.EDGES, Method.COMBINED)


def inject_virtual_links(
    ontology: OntologyGraph, page: PageSubgraph, config: VirtualConfig = DEFAULT_CONFIG
) -> CandidateEdgeSet:
    real = page_candidates(ontology, page)
    present = set(real.pairs)
    delta = config.virtual_delta(page)
    virtual = [
        CandidateEdge(pair, delta, ontology.eta(*pair), VIRTUAL)
        for pair in combinations(sorted(real.concepts), 2)
        if pair not in present and ontology.eta(*pair) >= 1
    ]
    return CandidateEdgeSet(real.edges + tuple(virtual), real.concepts)


def node_fraction(page: PageSubgraph, ontology: OntologyGraph) -> Fraction:
    if ontology.concept_count < 1:
        raise ValidationError("ontology has no concepts")
    return Fraction(len(page.concepts(ontology)), ontology.concept_count)


def edge_fraction(page: PageSubgraph, ontology: OntologyGraph) -> Fraction:
    """Distinct annotated pairs over distinct ontology pairs."""
    total = len(ontology.multiplicities)
    if total < 1:
        raise ValidationError("ontology has no relations")
    return Fraction(len(page.deltas(ontology)), total)


def real_page_score(ontology: OntologyGraph, page: PageSubgraph) -> ScoredPage:
    """Full-page score over the page's own relations, no virtual links."""
    length, prob = score_candidates(page_candidates(ontology, page))
    return ScoredPage(page.page_id, Method.REAL, length, prob)


def virtual_page_score(
    ontology: OntologyGraph,
    page: PageSubgraph,
    config: VirtualConfig = DEFAULT_CONFIG,
    variant: Method = Method.COMBINED,
) -> ScoredPage:
    variant = Method(variant)
    if variant not in VARIANTS:
        raise ValueError(f"unknown virtual variant {variant}")
    length, prob = score_candidates(inject_virtual_links(ontology, page, config))
    nodes = edges = Fraction(0)
    if variant in (Method.NODES, Method.COMBINED):
        nodes = node_fraction(page, ontology)
    if variant in (Method.EDGES, Method.COMBINED):
        edges = edge_fraction(page, ontology)
    return ScoredPage(page.page_id, variant, length, prob, nodes, edges)


def virtual_page_scores(
    ontology: OntologyGraph, page: PageSubgraph, config: VirtualConfig = DEFAULT_CONFIG
) -> dict[Method, ScoredPage]:
    """All four variants sharing one tree enumeration."""
    length, prob = score_candidates(inject_virtual_links(ontology, page, config))
    nodes = node_fraction(page, ontology)
    edges = edge_fraction(page, ontology)
    zero = Fraction(0)
    return {
        Method.BASE: ScoredPage(page.page_id, Method.BASE, length, prob),
        Method.NODES: ScoredPage(page.page_id, Method.NODES, length, prob, nodes, zero),
        Method.EDGES: ScoredPage(page.page_id, Method.EDGES, length, prob, zero, edges),
        Method.COMBINED: ScoredPage(page.page_id, Method.COMBINED, length, prob, nodes, edges),
    }
