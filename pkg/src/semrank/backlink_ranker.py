"""Back-link matrices inferred from shared relations, ranked by power iteration.

Two pages are linked (in both directions) once for every uniquely
identified ontology relation they both annotate.  The resulting matrix is
ranked by its dominant eigenvector.  This is the only part of the engine
that works in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from semrank.errors import ConvergenceError, ValidationError
from semrank.graph_model import PageSubgraph
from semrank.relation_ranker import Method, RankEntry, RankReport, order_entries

DEFAULT_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 10_000
# eigenvector entries closer than this rank as ties
TIE_DIGITS = 9


class BacklinkMode(str, Enum):
    RECIPROCAL = "reciprocal"
    NORMALIZED = "normalized"


@dataclass(frozen=True)
class BacklinkMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    mode: BacklinkMode = BacklinkMode.RECIPROCAL
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValidationError("back-link matrix must be square")
        if any(x < 0 for row in self.entries for x in row):
            raise ValidationError("back-link matrix entries must be non-negative")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"p{i + 1}" for i in range(n)))
        elif len(self.labels) != n:
            raise ValidationError("one label per matrix row required")

    @property
    def order(self) -> int:
        return len(self.entries)

    def to_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], mode: BacklinkMode = BacklinkMode.RECIPROCAL,
                  labels: Sequence[str] = ()) -> BacklinkMatrix:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows), BacklinkMode(mode), tuple(labels))


@dataclass(frozen=True)
class EigenResult:
    eigenvalue: float
    vector: tuple[float, ...]
    iterations: int
    residual: float
    # "last" normally; "max" when the last entry vanished
    normalized_by: str = "last"


def shared_relation_count(page_a: PageSubgraph, page_b: PageSubgraph) -> int:
    return len(page_a.relation_ids & page_b.relation_ids)


def shared_counts(pages: Sequence[PageSubgraph]) -> list[list[int]]:
    n = len(pages)
    counts = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            counts[i][j] = counts[j][i] = shared_relation_count(pages[i], pages[j])
    return counts


def reciprocal(counts: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(1, s) if s else Fraction(0) for s in row) for row in counts)


def column_normalize(counts: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Divide each column by its sum; all-zero columns stay zero.

    ``counts[i][j]`` is the number of links from page j to page i.
    """
    n = len(counts)
    totals = [sum(counts[i][j] for i in range(n)) for j in range(n)]
    return tuple(
        tuple(Fraction(counts[i][j], totals[j]) if totals[j] else Fraction(0) for j in range(n))
        for i in range(n)
    )


def build_matrix(pages: Sequence[PageSubgraph], mode: BacklinkMode = BacklinkMode.RECIPROCAL) -> BacklinkMatrix:
    if len(pages) < 2:
        raise ValidationError("back-link ranking needs at least two pages")
    mode = BacklinkMode(mode)
    counts = shared_counts(pages)
    entries = reciprocal(counts) if mode is BacklinkMode.RECIPROCAL else column_normalize(counts)
    return BacklinkMatrix(entries, mode, tuple(p.page_id for p in pages))


def power_iteration(
    H: BacklinkMatrix | np.ndarray,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EigenResult:
    """Dominant eigenpair by repeated multiplication with max-norm rescaling.

    The start vector is deliberately asymmetric so that matrices whose
    dominant eigenvalue is tied in magnitude (e.g. a swap matrix) oscillate
    and raise instead of converging by accident.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    A = H.to_array() if isinstance(H, BacklinkMatrix) else np.asarray(H, dtype=float)
    n = A.shape[0]
    if not np.any(A):
        raise ConvergenceError("back-link matrix is zero; pages share no relations", 0)

    v = 1.0 + np.arange(n) / n
    v /= np.max(np.abs(v))
    for iteration in range(1, max_iterations + 1):
        w = A @ v
        peak = np.max(np.abs(w))
        if peak == 0:
            raise ConvergenceError("iteration collapsed to the zero vector", iteration)
        w /= peak
        if np.max(np.abs(w - v)) < tolerance:
            v = w
            break
        v = w
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iterations} iterations "
            "(dominant eigenvalue not unique in magnitude?)",
            max_iterations,
        )

    normalized_by = "last"
    if abs(v[-1]) > 1e-12:
        v = v / v[-1]
    else:
        normalized_by = "max"
        v = v / v[np.argmax(np.abs(v))]
    Av = A @ v
    k = int(np.argmax(np.abs(v)))
    eigenvalue = float(Av[k] / v[k])
    residual = float(np.max(np.abs(Av - eigenvalue * v)))
    return EigenResult(eigenvalue, tuple(float(x) for x in v), iteration, residual, normalized_by)


def eigen_rank(
    pages: Sequence[PageSubgraph],
    mode: BacklinkMode = BacklinkMode.RECIPROCAL,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> RankReport:
    if len(pages) == 1:
        # nothing to link to; the lone page is trivially first
        return order_entries(Method.EIGEN, [RankEntry(pages[0].page_id, 1.0)])
    H = build_matrix(pages, mode)
    return rank_matrix(H, tolerance, max_iterations)


def rank_matrix(
    H: BacklinkMatrix,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> RankReport:
    result = power_iteration(H, tolerance, max_iterations)
    entries = [RankEntry(pid, x) for pid, x in zip(H.labels, result.vector)]
    return order_entries(Method.EIGEN, entries, eigen=result, digits=TIE_DIGITS)
