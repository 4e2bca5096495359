"""Run every ranking method over one environment and measure agreement."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from scipy.stats import kendalltau

from semrank.backlink_ranker import DEFAULT_TOLERANCE, BacklinkMode, eigen_rank
from semrank.errors import SemrankError
from semrank.graph_model import Environment
from semrank.relation_ranker import Method, RankReport, baseline_page_score, rank
from semrank.virtual_ranker import DEFAULT_CONFIG, VirtualConfig, virtual_page_scores

COMPARE_METHODS = (Method.OLD, Method.NODES, Method.EDGES, Method.COMBINED, Method.EIGEN)


@dataclass(frozen=True)
class Agreement:
    first: Method
    second: Method
    kendall_tau: float
    top1: bool
    top2: bool


@dataclass
class ComparisonReport:
    columns: dict[Method, RankReport] = field(default_factory=dict)
    errors: dict[Method, str] = field(default_factory=dict)
    agreements: list[Agreement] = field(default_factory=list)

    @property
    def methods(self) -> list[Method]:
        return [m for m in COMPARE_METHODS if m in self.columns or m in self.errors]


def kendall_tau(order_a: list[str], order_b: list[str]) -> float:
    """Rank correlation of two orderings of the same page set."""
    if sorted(order_a) != sorted(order_b):
        raise ValueError("orderings cover different page sets")
    if len(order_a) < 2:
        return 1.0
    pos_b = {pid: i for i, pid in enumerate(order_b)}
    tau, _ = kendalltau(range(len(order_a)), [pos_b[pid] for pid in order_a])
    return float(tau)


def rank_method(
    env: Environment,
    method: Method,
    config: VirtualConfig = DEFAULT_CONFIG,
    backlink_mode: BacklinkMode = BacklinkMode.RECIPROCAL,
    tolerance: float = DEFAULT_TOLERANCE,
) -> RankReport:
    method = Method(method)
    onto = env.ontology
    if method is Method.OLD:
        if env.query is None:
            raise SemrankError("method 'old' needs a query (none in file, none given via --assoc)")
        return rank([baseline_page_score(onto, p, env.query) for p in env.pages])
    if method is Method.EIGEN:
        return eigen_rank(env.pages, backlink_mode, tolerance)
    return rank([virtual_page_scores(onto, p, config)[method] for p in env.pages])


def compare(
    env: Environment,
    config: VirtualConfig = DEFAULT_CONFIG,
    backlink_mode: BacklinkMode = BacklinkMode.RECIPROCAL,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ComparisonReport:
    """All five methods side by side; a failing method becomes an error cell."""
    report = ComparisonReport()
    onto = env.ontology
    variants = None
    for method in COMPARE_METHODS:
        try:
            if method in (Method.NODES, Method.EDGES, Method.COMBINED):
                if variants is None:
                    variants = [virtual_page_scores(onto, p, config) for p in env.pages]
                report.columns[method] = rank([v[method] for v in variants])
            else:
                report.columns[method] = rank_method(env, method, config, backlink_mode, tolerance)
        except SemrankError as exc:
            report.errors[method] = f"{type(exc).__name__}: {exc}"

    done = [m for m in COMPARE_METHODS if m in report.columns]
    for a, b in combinations(done, 2):
        oa, ob = report.columns[a].order, report.columns[b].order
        report.agreements.append(
            Agreement(a, b, kendall_tau(oa, ob), oa[:1] == ob[:1], set(oa[:2]) == set(ob[:2]))
        )
    return report
