"""Query-restricted relevance scoring and rank reports.

A page's score is ``P(l) + l`` where ``l`` is the longest tree length with a
nonzero averaged tree probability ``P(l)``.  Scores therefore fall into
relevance classes ``[l, l + 1]``; inside a class pages compare by ``P``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import groupby
from typing import Iterable, Sequence

from semrank.forest_engine import aggregate_all, max_structural_length
from semrank.graph_model import CandidateEdgeSet, OntologyGraph, PageSubgraph, Query, query_candidates


class Method(str, Enum):
    OLD = "old"
    BASE = "base"
    REAL = "real"
    NODES = "nodes"
    EDGES = "edges"
    COMBINED = "combined"
    EIGEN = "eigen"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ScoredPage:
    page_id: str
    method: Method
    chosen_length: int
    probability: Fraction
    bonus_nodes: Fraction = Fraction(0)
    bonus_edges: Fraction = Fraction(0)

    @property
    def score(self) -> Fraction:
        return self.probability + self.chosen_length + self.bonus_nodes + self.bonus_edges

    @property
    def base_score(self) -> Fraction:
        return self.probability + self.chosen_length


@dataclass(frozen=True)
class RankEntry:
    page_id: str
    score: Fraction | float
    detail: ScoredPage | None = None


@dataclass(frozen=True)
class RankReport:
    """Pages in descending score order for one method.

    ``ties`` lists every group of two or more pages sharing a score, in
    report order.  ``eigen`` is set only for the eigenvector method.
    """

    method: Method
    entries: tuple[RankEntry, ...] = ()
    ties: tuple[tuple[str, ...], ...] = ()
    eigen: object | None = field(default=None, compare=False)

    @property
    def order(self) -> list[str]:
        return [e.page_id for e in self.entries]

    def score_of(self, page_id: str) -> Fraction | float:
        for e in self.entries:
            if e.page_id == page_id:
                return e.score
        raise KeyError(page_id)


def order_entries(
    method: Method, entries: Iterable[RankEntry], eigen: object | None = None, digits: int | None = None
) -> RankReport:
    """Sort by descending score, ascending page id, and record tie groups.

    ``digits`` rounds float scores before comparing, so that values equal
    up to solver noise tie instead of ordering arbitrarily.
    """

    def level(e: RankEntry):
        return e.score if digits is None else round(e.score, digits)

    ordered = tuple(sorted(entries, key=lambda e: (-level(e), e.page_id)))
    ties = tuple(
        tuple(e.page_id for e in grp)
        for grp in (list(g) for _, g in groupby(ordered, key=level))
        if len(grp) > 1
    )
    return RankReport(method, ordered, ties, eigen)


def constrained_score(candidates: CandidateEdgeSet, length: int) -> Fraction:
    """Averaged tree probability at one length; 0 when no tree exists."""
    agg = aggregate_all(candidates, length)[length]
    if agg.tree_count == 0:
        return Fraction(0)
    return agg.weight_sum / agg.tree_count


def score_candidates(candidates: CandidateEdgeSet) -> tuple[int, Fraction]:
    """Pick (length, probability) by scanning lengths downward.

    When no length yields a positive probability the page keeps its
    structural length with probability 0.
    """
    structural = max_structural_length(candidates)
    if structural == 0:
        return 0, Fraction(0)
    # a positive tree needs all-positive edges, so nothing above this can score
    top = max_structural_length(candidates, positive_only=True)
    if top == 0:
        return structural, Fraction(0)
    aggs = aggregate_all(candidates, top)
    for length in range(top, 0, -1):
        agg = aggs[length]
        if agg.tree_count and agg.weight_sum > 0:
            return length, agg.weight_sum / agg.tree_count
    return structural, Fraction(0)


def baseline_page_score(ontology: OntologyGraph, page: PageSubgraph, query: Query) -> ScoredPage:
    length, prob = score_candidates(query_candidates(ontology, page, query))
    return ScoredPage(page.page_id, Method.OLD, length, prob)


def rank(scored: Sequence[ScoredPage]) -> RankReport:
    methods = {s.method for s in scored}
    if len(methods) > 1:
        raise ValueError(f"cannot rank mixed methods {sorted(map(str, methods))}")
    method = methods.pop() if methods else Method.OLD
    return order_entries(method, (RankEntry(s.page_id, s.score, s) for s in scored))
