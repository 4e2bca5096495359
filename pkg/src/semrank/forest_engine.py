"""Enumeration of connected acyclic edge subsets (trees) of a candidate set.

A "forest of length l" in the ranking vocabulary is a tree with ``l`` edges
drawn from the candidate graph.  Trees are grown outward from their
lowest-indexed edge; each frontier edge is either taken or banned for the
rest of the branch, which yields every tree exactly once without a
post-hoc duplicate filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from semrank.errors import EnumerationCapError, ValidationError
from semrank.graph_model import CandidateEdgeSet, Pair

ENUMERATION_CAP = 24
ORACLE_CAP = 16


@dataclass(frozen=True, order=True)
class TreeSubset:
    edges: tuple[Pair, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def concepts(self) -> frozenset[int]:
        return frozenset(c for e in self.edges for c in e)


@dataclass(frozen=True)
class LengthAggregate:
    length: int
    weight_sum: Fraction
    tree_count: int


class DisjointSet:
    """Union-find over hashable items with path halving."""

    def __init__(self) -> None:
        self._parent: dict = {}

    def find(self, x):
        parent = self._parent
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the sets of a and b; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self._parent[ra] = rb
        return True

    def component_sizes(self) -> list[int]:
        sizes: dict = {}
        for x in list(self._parent):
            root = self.find(x)
            sizes[root] = sizes.get(root, 0) + 1
        return list(sizes.values())


def _check_cap(candidates: CandidateEdgeSet, cap: int = ENUMERATION_CAP) -> None:
    if len(candidates) > cap:
        raise EnumerationCapError(len(candidates), cap)


def _walk_trees(pairs: tuple[Pair, ...], max_length: int, emit: Callable[[list[int]], None]) -> None:
    """Call ``emit`` with the edge indices of every tree up to ``max_length`` edges."""
    incident: dict[int, list[int]] = {}
    for idx, (a, b) in enumerate(pairs):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)

    def grow(root: int, tree: list[int], verts: set[int], banned: set[int]) -> None:
        emit(tree)
        if len(tree) == max_length:
            return
        # frontier: edges leaving the vertex set, above the root, not yet banned
        frontier = sorted(
            {
                idx
                for v in verts
                for idx in incident[v]
                if idx > root and idx not in banned and not (pairs[idx][0] in verts and pairs[idx][1] in verts)
            }
        )
        local_banned = set(banned)
        for idx in frontier:
            a, b = pairs[idx]
            new_vertex = b if a in verts else a
            tree.append(idx)
            verts.add(new_vertex)
            grow(root, tree, verts, local_banned)
            verts.discard(new_vertex)
            tree.pop()
            local_banned.add(idx)

    if max_length < 1:
        return
    for root, (a, b) in enumerate(pairs):
        grow(root, [root], {a, b}, set())


def enumerate_trees(candidates: CandidateEdgeSet, length: int) -> list[TreeSubset]:
    """All trees with exactly ``length`` candidate edges, lexicographically ordered."""
    if length < 1:
        raise ValueError("tree length must be >= 1")
    _check_cap(candidates)
    pairs = candidates.pairs
    found: list[TreeSubset] = []

    def emit(tree: list[int]) -> None:
        if len(tree) == length:
            found.append(TreeSubset(tuple(sorted(pairs[i] for i in tree))))

    _walk_trees(pairs, length, emit)
    found.sort()
    return found


def aggregate_all(candidates: CandidateEdgeSet, max_length: int | None = None) -> dict[int, LengthAggregate]:
    """Per-length weight sums and tree counts from a single enumeration pass."""
    _check_cap(candidates)
    pairs = candidates.pairs
    probs = [e.probability for e in candidates.edges]
    if max_length is None:
        max_length = max_structural_length(candidates)
    weights = [Fraction(0)] * (max_length + 1)
    counts = [0] * (max_length + 1)

    def emit(tree: list[int]) -> None:
        product = Fraction(1)
        for i in tree:
            product *= probs[i]
            if not product:
                break
        n = len(tree)
        weights[n] += product
        counts[n] += 1

    _walk_trees(pairs, max_length, emit)
    return {
        n: LengthAggregate(n, weights[n], counts[n]) for n in range(1, max_length + 1)
    }


def aggregate(candidates: CandidateEdgeSet, length: int) -> LengthAggregate:
    if length < 1:
        raise ValueError("tree length must be >= 1")
    return aggregate_all(candidates, length)[length]


def max_structural_length(candidates: CandidateEdgeSet, positive_only: bool = False) -> int:
    """Edge count of the largest tree: (largest component size) - 1."""
    _check_cap(candidates)
    dsu = DisjointSet()
    for e in candidates.edges:
        if positive_only and e.delta <= 0:
            continue
        dsu.union(*e.pair)
    return max(dsu.component_sizes(), default=1) - 1


def is_tree(edges: tuple[Pair, ...]) -> bool:
    dsu = DisjointSet()
    for a, b in edges:
        if not dsu.union(a, b):
            return False
    roots = {dsu.find(c) for e in edges for c in e}
    return len(roots) == 1


def brute_force_trees(candidates: CandidateEdgeSet, length: int) -> list[TreeSubset]:
    """Reference enumeration: filter every ``length``-subset of edges."""
    if len(candidates) > ORACLE_CAP:
        raise ValidationError(f"oracle limited to {ORACLE_CAP} edges, got {len(candidates)}")
    if length < 1:
        raise ValueError("tree length must be >= 1")
    return sorted(
        TreeSubset(tuple(sorted(subset)))
        for subset in combinations(candidates.pairs, length)
        if is_tree(subset)
    )
