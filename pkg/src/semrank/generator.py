"""Seeded generation of controlled ontologies and page sets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from semrank.errors import ValidationError
from semrank.graph_model import Environment, build_environment


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    concept_count: int = 6
    ontology_pair_density: float = 14 / 15
    max_multiplicity: int = 5
    page_count: int = 10
    page_relation_rate: float = 0.2
    # every pair gets exactly max_multiplicity relations instead of 1..max
    fixed_multiplicity: bool = False
    # None puts every concept in the query
    query_size: int | None = None
    # when set, a page picks this many ontology pairs and keeps 0..eta
    # relations on each instead of sampling relations at page_relation_rate
    page_pairs: int | None = None

    def validate(self) -> None:
        if self.concept_count < 2:
            raise ValidationError("concept_count must be >= 2")
        if self.max_multiplicity < 1:
            raise ValidationError("max_multiplicity must be >= 1")
        if self.page_count < 1:
            raise ValidationError("page_count must be >= 1")
        if not 0 < self.ontology_pair_density <= 1:
            raise ValidationError("ontology_pair_density must lie in (0, 1]")
        if not 0 <= self.page_relation_rate <= 1:
            raise ValidationError("page_relation_rate must lie in [0, 1]")
        if self.page_pairs is not None and self.page_pairs < 1:
            raise ValidationError("page_pairs must be >= 1")
        if self.query_size is not None and not 1 <= self.query_size <= self.concept_count:
            raise ValidationError("query_size must lie in [1, concept_count]")


TEN_PAGE_SHAPE = GeneratorParams(
    concept_count=6,
    ontology_pair_density=14 / 15,
    max_multiplicity=5,
    page_count=10,
    fixed_multiplicity=True,
    page_pairs=5,
)


def generate_environment(params: GeneratorParams) -> Environment:
    """Build a random environment; identical params give an identical result.

    Ontology pairs are sampled without replacement so that exactly
    ``round(density * C(n, 2))`` pairs (at least one) are related.  Pages
    keep each ontology relation independently with ``page_relation_rate``,
    or, with ``page_pairs`` set, take a random count of relations on a few
    chosen pairs.  A page that keeps nothing is given one isolated concept.
    """
    params.validate()
    rng = random.Random(params.seed)
    n = params.concept_count
    all_pairs = list(combinations(range(n), 2))
    k = max(1, round(params.ontology_pair_density * len(all_pairs)))
    pairs = sorted(rng.sample(all_pairs, k))

    etas = [
        params.max_multiplicity if params.fixed_multiplicity else rng.randint(1, params.max_multiplicity)
        for _ in pairs
    ]
    width = len(str(sum(etas)))
    relations = []
    by_pair: list[list[str]] = []
    for (a, b), eta in zip(pairs, etas):
        by_pair.append([])
        for _ in range(eta):
            rid = f"r{len(relations) + 1:0{width}d}"
            relations.append((rid, a, b))
            by_pair[-1].append(rid)

    pwidth = len(str(params.page_count))
    pages: dict[str, list[str]] = {}
    extra: dict[str, list[int]] = {}
    for p in range(params.page_count):
        pid = f"p{p + 1:0{pwidth}d}"
        if params.page_pairs is None:
            pages[pid] = [rid for rid, _, _ in relations if rng.random() < params.page_relation_rate]
        else:
            picked = sorted(rng.sample(range(len(pairs)), min(params.page_pairs, len(pairs))))
            pages[pid] = [rid for i in picked for rid in by_pair[i][: rng.randint(0, etas[i])]]
        if not pages[pid]:
            extra[pid] = [rng.randrange(n)]

    if params.query_size is None:
        qconcepts = list(range(n))
    else:
        qconcepts = sorted(rng.sample(range(n), params.query_size))
    query = [(f"t{c}", c) for c in qconcepts]
    return build_environment([f"C{i}" for i in range(n)], relations, pages, extra, query)
