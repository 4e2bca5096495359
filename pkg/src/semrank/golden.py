"""Reference worked examples, embedded as fixtures with expected values.

``verify_golden`` recomputes each example through the public API and
compares against the recorded value, either exactly (rationals, orderings)
or within a stated absolute tolerance.

The fixture environments are reconstructions: where only scores are known,
relation multiplicities were chosen so that those scores follow from the
scoring rules implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Sequence

from semrank.backlink_ranker import (
    BacklinkMatrix,
    BacklinkMode,
    build_matrix,
    column_normalize,
    power_iteration,
    rank_matrix,
    shared_relation_count,
)
from semrank.compare import rank_method
from semrank.forest_engine import aggregate, enumerate_trees, max_structural_length
from semrank.graph_model import CandidateEdgeSet, Environment, build_environment, query_candidates
from semrank.relation_ranker import Method, baseline_page_score, constrained_score, rank
from semrank.render import format_score
from semrank.virtual_ranker import inject_virtual_links, real_page_score, virtual_page_score

TRAVEL_LABELS = ("Destination", "Activity", "Accommodation")
TRAVEL_TERMS = (("Rome", 0), ("historic-center", 1), ("hotel", 2))


def _multi(pairs: dict[tuple[int, int], int]) -> list[tuple[str, int, int]]:
    """Relations ``r{a}{b}{letter}`` with the requested multiplicity per pair."""
    rels = []
    for (a, b), eta in pairs.items():
        rels += [(f"r{a}{b}{chr(97 + k)}", a, b) for k in range(eta)]
    return rels


def travel_joint_env() -> Environment:
    """Three concepts, two relations on every pair; p1 half-covers two pairs."""
    return build_environment(
        TRAVEL_LABELS,
        _multi({(0, 1): 2, (0, 2): 2, (1, 2): 2}),
        {"p1": ["r01a", "r02a"], "p2": ["r01a", "r01b"]},
        query=TRAVEL_TERMS,
    )


def travel_virtual_env() -> Environment:
    """No Destination-Accommodation relation; p2 lacks the Activity-Accommodation link."""
    return build_environment(
        TRAVEL_LABELS,
        _multi({(0, 1): 3, (1, 2): 2}),
        {"p1": ["r01a", "r12a"], "p2": ["r01a"]},
        {"p2": [2]},
        query=TRAVEL_TERMS,
    )


def bridge_env() -> Environment:
    """p2 holds two triangles that only the ontology's 0-1 relation can join."""
    return build_environment(
        [f"C{i}" for i in range(6)],
        _multi({(0, 1): 2, (1, 2): 2, (2, 3): 2, (1, 3): 2, (0, 4): 2, (0, 5): 2, (4, 5): 2}),
        {
            "p1": ["r01a", "r12a", "r23a", "r13a"],
            "p2": ["r04a", "r05a", "r45a", "r12a", "r23a", "r13a"],
        },
    )


def tie_env() -> Environment:
    """Both pages miss every query pair; p1 carries one extra concept."""
    return build_environment(
        [f"C{i}" for i in range(5)],
        _multi({(1, 2): 2, (2, 3): 2, (1, 3): 2, (0, 1): 1, (3, 4): 1}),
        {"p1": ["r01a", "r34a"], "p2": ["r01a"]},
        {"p2": [3]},
        query=(("t1", 1), ("t2", 2), ("t3", 3)),
    )


def shared_count_env(counts: Sequence[Sequence[int]], private: dict[int, list[tuple[str, int, int]]] | None = None) -> Environment:
    """Pages p1..pn where pages i and j share exactly counts[i][j] relations."""
    n = len(counts)
    ring = list(combinations(range(6), 2))
    relations: list[tuple[str, int, int]] = []
    pages: dict[str, list[str]] = {f"p{i + 1}": [] for i in range(n)}
    for i, j in combinations(range(n), 2):
        for k in range(counts[i][j]):
            a, b = ring[len(relations) % len(ring)]
            rid = f"s{i + 1}{j + 1}_{k + 1}"
            relations.append((rid, a, b))
            pages[f"p{i + 1}"].append(rid)
            pages[f"p{j + 1}"].append(rid)
    for i, rels in (private or {}).items():
        relations += rels
        pages[f"p{i + 1}"] += [rid for rid, _, _ in rels]
    return build_environment([f"C{i}" for i in range(6)], relations, pages,
                             query=[(f"t{i}", i) for i in range(6)])


def _symmetric(n: int, upper: dict[tuple[int, int], int]) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    for (i, j), s in upper.items():
        m[i - 1][j - 1] = m[j - 1][i - 1] = s
    return m


BACKLINK_1_COUNTS = _symmetric(5, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (1, 5): 2, (2, 3): 3, (3, 4): 2, (3, 5): 2, (4, 5): 1})
BACKLINK_2_COUNTS = _symmetric(5, {(1, 2): 1, (1, 3): 1, (1, 4): 1, (2, 3): 1, (2, 4): 1, (2, 5): 2, (3, 4): 1, (3, 5): 4})
BACKLINK_3_COUNTS = _symmetric(5, {(1, 2): 4, (1, 3): 2, (1, 4): 5, (1, 5): 2, (2, 4): 5, (2, 5): 6, (3, 4): 3, (4, 5): 2})

H1_ROWS = [
    [0, 1, 1, 1, "1/2"],
    [1, 0, "1/3", 0, 0],
    [1, "1/3", 0, "1/2", "1/2"],
    [1, 0, "1/2", 0, 1],
    ["1/2", 0, "1/2", 1, 0],
]
H2_ROWS = [
    [0, 1, 1, 1, 0],
    [1, 0, 1, 1, "1/2"],
    [1, 1, 0, 1, "1/4"],
    [1, 1, 1, 0, 0],
    [0, "1/2", "1/4", 0, 0],
]
H3_ROWS = [
    [0, "1/4", "1/2", "1/5", "1/2"],
    ["1/4", 0, 0, "1/5", "1/6"],
    ["1/2", 0, 0, "1/3", 0],
    ["1/5", "1/5", "1/3", 0, "1/2"],
    ["1/2", "1/6", 0, "1/2", 0],
]
# links[i][j] = 1 when page j links to page i
SMALL_WEB_LINKS = [
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 0, 0],
]


def backlink_1_env() -> Environment:
    return shared_count_env(BACKLINK_1_COUNTS, {0: [("r24", 2, 4)]})


def _matrix(rows) -> BacklinkMatrix:
    return BacklinkMatrix.from_rows(rows)


def _page(env: Environment, pid: str):
    return next(p for p in env.pages if p.page_id == pid)


def _triangle_half_one_zero() -> CandidateEdgeSet:
    return CandidateEdgeSet.from_probabilities({(1, 2): Fraction(1, 2), (2, 3): 1, (1, 3): 0})


def _path_with_chord() -> CandidateEdgeSet:
    half = Fraction(1, 2)
    return CandidateEdgeSet.from_probabilities({(0, 1): half, (1, 2): half, (2, 3): half, (1, 3): half})


def _scores(env: Environment, fn: Callable) -> dict[str, Fraction]:
    return {p.page_id: fn(env, p).score for p in env.pages}


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    compute: Callable[[], Any]
    expected: Any
    # None means exact equality
    tolerance: float | None = None


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: Any
    actual: Any
    tolerance: float | None
    passed: bool
    error: str | None = None


def golden_checks() -> list[GoldenCheck]:
    tj, tv, br, tie = travel_joint_env(), travel_virtual_env(), bridge_env(), tie_env()
    bl1 = backlink_1_env()
    old = lambda env, p: baseline_page_score(env.ontology, p, env.query)  # noqa: E731
    real = lambda env, p: real_page_score(env.ontology, p)  # noqa: E731
    base = lambda env, p: virtual_page_score(env.ontology, p, variant=Method.BASE)  # noqa: E731

    def joint(pid: str) -> Fraction:
        cands = query_candidates(tj.ontology, _page(tj, pid), tj.query)
        return aggregate(cands, max_structural_length(cands)).weight_sum

    def virtual_probability(env: Environment, pid: str, pair) -> Fraction:
        cands = inject_virtual_links(env.ontology, _page(env, pid))
        return next(e.probability for e in cands if e.pair == pair and e.kind == "virtual")

    def order(env: Environment, fn: Callable) -> list[str]:
        return rank([fn(env, p) for p in env.pages]).order

    def h_eigen(rows):
        return power_iteration(_matrix(rows))

    half = Fraction(1, 2)
    return [
        GoldenCheck("travel p1 edge probabilities",
                    lambda: sorted(e.probability for e in query_candidates(tj.ontology, _page(tj, "p1"), tj.query)),
                    [0, half, half]),
        GoldenCheck("travel joint probability p1", lambda: joint("p1"), Fraction(1, 4)),
        GoldenCheck("travel joint probability p2", lambda: joint("p2"), Fraction(0)),
        GoldenCheck("triangle (0.5, 1, 0) trees of length 2",
                    lambda: len(enumerate_trees(_triangle_half_one_zero(), 2)), 3),
        GoldenCheck("triangle (0.5, 1, 0) weight sum",
                    lambda: aggregate(_triangle_half_one_zero(), 2).weight_sum, half),
        GoldenCheck("triangle (0.5, 1, 0) constrained score",
                    lambda: constrained_score(_triangle_half_one_zero(), 2), Fraction(1, 6)),
        GoldenCheck("travel baseline p1 exact", lambda: old(tv, _page(tv, "p1")).score, 2 + Fraction(1, 6)),
        GoldenCheck("travel baseline p1 rendered",
                    lambda: float(format_score(old(tv, _page(tv, "p1")).score)), 2.16666, 1e-5),
        GoldenCheck("travel virtual link probability p2",
                    lambda: virtual_probability(tv, "p2", (1, 2)), Fraction(1, 4)),
        GoldenCheck("travel virtual base p2", lambda: base(tv, _page(tv, "p2")).score, 2 + Fraction(1, 4) / 3),
        GoldenCheck("travel virtual base p1", lambda: base(tv, _page(tv, "p1")).score, 2 + Fraction(1, 6)),
        GoldenCheck("travel virtual order", lambda: order(tv, base), ["p1", "p2"]),
        GoldenCheck("path with chord trees of length 3", lambda: len(enumerate_trees(_path_with_chord(), 3)), 3),
        GoldenCheck("path with chord constrained score",
                    lambda: constrained_score(_path_with_chord(), 3), Fraction(1, 8)),
        GoldenCheck("bridge pages before virtual links", lambda: _scores(br, real),
                    {"p1": 3 + Fraction(1, 8), "p2": 2 + Fraction(1, 4)}),
        GoldenCheck("bridge order before virtual links", lambda: order(br, real), ["p1", "p2"]),
        GoldenCheck("bridge p2 augmented trees of length 5",
                    lambda: (lambda a: (a.tree_count, a.weight_sum))(
                        aggregate(inject_virtual_links(br.ontology, _page(br, "p2")), 5)),
                    (9, Fraction(9, 64))),
        GoldenCheck("bridge p2 augmented max length",
                    lambda: max_structural_length(inject_virtual_links(br.ontology, _page(br, "p2"))), 5),
        GoldenCheck("bridge p2 after virtual links", lambda: base(br, _page(br, "p2")).score,
                    5 + Fraction(1, 64)),
        GoldenCheck("bridge order after virtual links", lambda: order(br, base), ["p2", "p1"]),
        GoldenCheck("zero-probability fallback score", lambda: _scores(tie, old), {"p1": 2, "p2": 2}),
        GoldenCheck("tie resolves by page id",
                    lambda: (lambda r: (r.order, r.ties))(rank([old(tie, p) for p in tie.pages])),
                    (["p1", "p2"], (("p1", "p2"),))),
        GoldenCheck("back-link matrix from shared relations",
                    lambda: build_matrix(bl1.pages).entries, _matrix(H1_ROWS).entries),
        GoldenCheck("private relation adds no back-link",
                    lambda: ([p.page_id for p in bl1.pages if "r24" in p.relation_ids],
                             [shared_relation_count(_page(bl1, "p1"), p) for p in bl1.pages[1:]]),
                    (["p1"], [1, 1, 1, 2])),
        GoldenCheck("H1 eigenvalue", lambda: h_eigen(H1_ROWS).eigenvalue, 2.48113, 1e-4),
        GoldenCheck("H1 eigenvector", lambda: list(h_eigen(H1_ROWS).vector),
                    [1.43173, 0.727415, 1.11926, 1.20564, 1.0], 1e-4),
        GoldenCheck("H1 order", lambda: rank_method(bl1, Method.EIGEN).order,
                    ["p1", "p4", "p3", "p5", "p2"]),
        GoldenCheck("H2 eigenvalue", lambda: h_eigen(H2_ROWS).eigenvalue, 3.04681, 1e-4),
        GoldenCheck("H2 eigenvector", lambda: list(h_eigen(H2_ROWS).vector),
                    [3.95945, 4.083, 4.02123, 3.95945, 1.0], 1e-4),
        GoldenCheck("H2 order", lambda: rank_matrix(_matrix(H2_ROWS)).order, ["p2", "p3", "p1", "p4", "p5"]),
        GoldenCheck("H3 eigenvalue", lambda: h_eigen(H3_ROWS).eigenvalue, 1.12237, 1e-4),
        GoldenCheck("H3 eigenvector", lambda: list(h_eigen(H3_ROWS).vector),
                    [1.08779, 0.563484, 0.772415, 0.96913, 1.0], 1e-4),
        GoldenCheck("H3 order", lambda: rank_matrix(_matrix(H3_ROWS)).order, ["p1", "p5", "p4", "p3", "p2"]),
        GoldenCheck("small web second column",
                    lambda: [row[1] for row in column_normalize(SMALL_WEB_LINKS)], [half, 0, 0, half]),
        GoldenCheck("small web eigenvalue",
                    lambda: power_iteration(BacklinkMatrix(column_normalize(SMALL_WEB_LINKS),
                                                           BacklinkMode.NORMALIZED)).eigenvalue, 1.0, 1e-6),
    ]


def _close(actual: Any, expected: Any, tol: float) -> bool:
    if isinstance(expected, (list, tuple)):
        return len(actual) == len(expected) and all(_close(a, e, tol) for a, e in zip(actual, expected))
    return abs(float(actual) - float(expected)) <= tol


def verify_golden(overrides: dict[str, Any] | None = None) -> list[CheckResult]:
    """Run every embedded check; ``overrides`` replaces expected values by name."""
    overrides = overrides or {}
    results = []
    for check in golden_checks():
        expected = overrides.get(check.name, check.expected)
        try:
            actual = check.compute()
        except Exception as exc:  # a crashing check is a failing check
            results.append(CheckResult(check.name, expected, None, check.tolerance, False, repr(exc)))
            continue
        if check.tolerance is None:
            passed = actual == expected
        else:
            passed = _close(actual, expected, check.tolerance)
        results.append(CheckResult(check.name, expected, actual, check.tolerance, passed))
    return results
