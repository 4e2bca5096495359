"""Relation-based page ranking over ontology-annotated pages."""

from semrank.graph_model import (
    CandidateEdge,
    CandidateEdgeSet,
    Environment,
    OntologyGraph,
    PageSubgraph,
    Query,
    RelationEdge,
    load_environment,
    page_candidates,
    query_candidates,
)
from semrank.relation_ranker import Method, RankReport, ScoredPage, baseline_page_score, rank
from semrank.virtual_ranker import VirtualConfig, VirtualMode, virtual_page_score
from semrank.backlink_ranker import BacklinkMode, eigen_rank, power_iteration

__all__ = [
    "BacklinkMode",
    "CandidateEdge",
    "CandidateEdgeSet",
    "Environment",
    "Method",
    "OntologyGraph",
    "PageSubgraph",
    "Query",
    "RankReport",
    "RelationEdge",
    "ScoredPage",
    "VirtualConfig",
    "VirtualMode",
    "baseline_page_score",
    "eigen_rank",
    "load_environment",
    "page_candidates",
    "power_iteration",
    "query_candidates",
    "rank",
    "virtual_page_score",
]
