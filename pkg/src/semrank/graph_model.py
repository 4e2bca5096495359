"""Ontology, page and query data model.

Concepts are dense integer indices.  An ontology is an undirected multigraph
whose parallel edges carry unique relation ids; a page is a subset of those
relation ids plus optional isolated concepts.  Multiplicity counts
(``eta`` for the ontology, ``delta`` for a page) are always derived, never
stored.

The module also defines the candidate edge sets that the rankers enumerate
trees over: a simple graph with one weighted edge per concept pair.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Any, Iterable, Iterator, NamedTuple

from semrank.errors import EnvironmentFormatError, ValidationError

Pair = tuple[int, int]

REAL = "real"
VIRTUAL = "virtual"


def pair_key(a: int, b: int) -> Pair:
    """Unordered concept pair as a sorted tuple."""
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class RelationEdge:
    id: str
    source: int
    target: int

    @property
    def pair(self) -> Pair:
        return pair_key(self.source, self.target)


@dataclass(frozen=True)
class OntologyGraph:
    concept_labels: tuple[str, ...]
    relations: tuple[RelationEdge, ...]

    def __post_init__(self) -> None:
        n = len(self.concept_labels)
        seen: set[str] = set()
        for rel in self.relations:
            if rel.id in seen:
                raise ValidationError(f"duplicate relation id {rel.id!r}")
            seen.add(rel.id)
            for end in (rel.source, rel.target):
                if not 0 <= end < n:
                    raise ValidationError(
                        f"relation {rel.id!r} references dangling concept {end} "
                        f"(ontology has {n} concepts)"
                    )
            if rel.source == rel.target:
                raise ValidationError(f"relation {rel.id!r} is a self-loop on concept {rel.source}")

    @property
    def concept_count(self) -> int:
        return len(self.concept_labels)

    @cached_property
    def relation_index(self) -> dict[str, RelationEdge]:
        return {rel.id: rel for rel in self.relations}

    @cached_property
    def multiplicities(self) -> dict[Pair, int]:
        """eta for every pair that has at least one relation."""
        return dict(Counter(rel.pair for rel in self.relations))

    def eta(self, a: int, b: int) -> int:
        return self.multiplicities.get(pair_key(a, b), 0)

    def relation(self, relation_id: str) -> RelationEdge:
        try:
            return self.relation_index[relation_id]
        except KeyError:
            raise ValidationError(f"unknown relation id {relation_id!r}") from None


@dataclass(frozen=True)
class PageSubgraph:
    page_id: str
    relation_ids: frozenset[str]
    extra_concepts: frozenset[int] = frozenset()

    def validate(self, ontology: OntologyGraph) -> None:
        for rid in sorted(self.relation_ids):
            if rid not in ontology.relation_index:
                raise ValidationError(f"page {self.page_id!r}: unknown relation id {rid!r}")
        for c in sorted(self.extra_concepts):
            if not 0 <= c < ontology.concept_count:
                raise ValidationError(f"page {self.page_id!r}: dangling concept {c}")

    def deltas(self, ontology: OntologyGraph) -> dict[Pair, int]:
        """delta for every pair the page annotates at least once."""
        return dict(Counter(ontology.relation(rid).pair for rid in self.relation_ids))

    def concepts(self, ontology: OntologyGraph) -> frozenset[int]:
        touched = {c for pair in self.deltas(ontology) for c in pair}
        return frozenset(touched | self.extra_concepts)


@dataclass(frozen=True)
class Query:
    associations: tuple[tuple[str, int], ...]

    @property
    def concepts(self) -> frozenset[int]:
        return frozenset(c for _, c in self.associations)

    def validate(self, ontology: OntologyGraph) -> None:
        if not self.associations:
            raise ValidationError("query has no term associations")
        for term, c in self.associations:
            if not 0 <= c < ontology.concept_count:
                raise ValidationError(f"query term {term!r}: dangling concept {c}")


@dataclass(frozen=True)
class CandidateEdge:
    pair: Pair
    delta: Fraction
    eta: int
    kind: str = REAL

    @property
    def probability(self) -> Fraction:
        return Fraction(self.delta) / self.eta


@dataclass(frozen=True)
class CandidateEdgeSet:
    """Weighted simple graph scored by the tree enumerator.

    ``concepts`` is the vertex scope the set was derived from (query
    concepts or page concepts); it may contain isolated vertices.
    """

    edges: tuple[CandidateEdge, ...]
    concepts: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.edges, key=lambda e: e.pair))
        pairs = [e.pair for e in ordered]
        if len(set(pairs)) != len(pairs):
            raise ValidationError("candidate edge set has more than one edge per pair")
        for e in ordered:
            if e.pair[0] >= e.pair[1]:
                raise ValidationError(f"candidate pair {e.pair} is not a sorted distinct pair")
            if e.eta < 1 or not 0 <= e.delta <= e.eta:
                raise ValidationError(f"candidate {e.pair}: need 0 <= delta <= eta, eta >= 1")
        object.__setattr__(self, "edges", ordered)
        touched = {c for p in pairs for c in p}
        object.__setattr__(self, "concepts", frozenset(self.concepts) | touched)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[CandidateEdge]:
        return iter(self.edges)

    @property
    def pairs(self) -> tuple[Pair, ...]:
        return tuple(e.pair for e in self.edges)

    def probabilities(self) -> dict[Pair, Fraction]:
        return {e.pair: e.probability for e in self.edges}

    def positive(self) -> CandidateEdgeSet:
        """Sub-view with the zero-probability edges dropped."""
        return CandidateEdgeSet(tuple(e for e in self.edges if e.delta > 0), self.concepts)

    @classmethod
    def from_probabilities(cls, probs: dict[Pair, Fraction | int | str]) -> CandidateEdgeSet:
        """Build a set directly from pair -> T, using eta = denominator of T."""
        edges = []
        for (a, b), t in probs.items():
            t = Fraction(t)
            edges.append(CandidateEdge(pair_key(a, b), Fraction(t.numerator), t.denominator))
        return cls(tuple(edges))


class Environment(NamedTuple):
    ontology: OntologyGraph
    pages: tuple[PageSubgraph, ...]
    query: Query | None


def query_candidates(ontology: OntologyGraph, page: PageSubgraph, query: Query) -> CandidateEdgeSet:
    """Query-restricted view: every ontology pair inside the query concepts."""
    query.validate(ontology)
    deltas = page.deltas(ontology)
    edges = []
    for pair in combinations(sorted(query.concepts), 2):
        eta = ontology.eta(*pair)
        if eta >= 1:
            edges.append(CandidateEdge(pair, Fraction(deltas.get(pair, 0)), eta, REAL))
    return CandidateEdgeSet(tuple(edges), query.concepts)


def page_candidates(ontology: OntologyGraph, page: PageSubgraph) -> CandidateEdgeSet:
    """Full-page view: one real edge per pair the page annotates."""
    edges = [
        CandidateEdge(pair, Fraction(d), ontology.eta(*pair), REAL)
        for pair, d in page.deltas(ontology).items()
    ]
    return CandidateEdgeSet(tuple(edges), page.concepts(ontology))


# -- environment documents ---------------------------------------------------


def _require(obj: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise EnvironmentFormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise EnvironmentFormatError(f"{where}.{key}: unexpected type {type(value).__name__}")
    return value


def environment_from_dict(doc: Any) -> Environment:
    """Validate a decoded document and build the environment structures."""
    onto_doc = _require(doc, "ontology", dict, "document")
    labels = _require(onto_doc, "concepts", list, "ontology")
    if not all(isinstance(x, str) for x in labels):
        raise EnvironmentFormatError("ontology.concepts: labels must be strings")
    relations = []
    for k, r in enumerate(_require(onto_doc, "relations", list, "ontology")):
        where = f"ontology.relations[{k}]"
        relations.append(
            RelationEdge(
                _require(r, "id", str, where),
                _require(r, "source", int, where),
                _require(r, "target", int, where),
            )
        )
    ontology = OntologyGraph(tuple(labels), tuple(relations))

    pages = []
    seen_pages: set[str] = set()
    for k, p in enumerate(_require(doc, "pages", list, "document")):
        where = f"pages[{k}]"
        pid = _require(p, "id", str, where)
        if pid in seen_pages:
            raise ValidationError(f"duplicate page id {pid!r}")
        seen_pages.add(pid)
        rids = _require(p, "relations", list, where)
        if not all(isinstance(x, str) for x in rids):
            raise EnvironmentFormatError(f"{where}.relations: ids must be strings")
        if len(set(rids)) != len(rids):
            dup = next(x for x in rids if rids.count(x) > 1)
            raise ValidationError(f"page {pid!r}: relation id {dup!r} annotated twice")
        extra = p.get("concepts", [])
        if not isinstance(extra, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in extra
        ):
            raise EnvironmentFormatError(f"{where}.concepts: expected an array of integers")
        page = PageSubgraph(pid, frozenset(rids), frozenset(extra))
        page.validate(ontology)
        pages.append(page)

    query = None
    if doc.get("query") is not None:
        assoc = []
        for k, t in enumerate(_require(doc["query"], "terms", list, "query")):
            where = f"query.terms[{k}]"
            assoc.append((_require(t, "term", str, where), _require(t, "concept", int, where)))
        query = Query(tuple(assoc))
        query.validate(ontology)
    return Environment(ontology, tuple(pages), query)


def environment_to_dict(env: Environment) -> dict[str, Any]:
    """Canonical document: relations by id, pages by id, concepts by index."""
    onto = env.ontology
    doc: dict[str, Any] = {
        "ontology": {
            "concepts": list(onto.concept_labels),
            "relations": [
                {"id": r.id, "source": r.source, "target": r.target}
                for r in sorted(onto.relations, key=lambda r: r.id)
            ],
        },
        "pages": [],
    }
    for page in sorted(env.pages, key=lambda p: p.page_id):
        entry: dict[str, Any] = {"id": page.page_id, "relations": sorted(page.relation_ids)}
        if page.extra_concepts:
            entry["concepts"] = sorted(page.extra_concepts)
        doc["pages"].append(entry)
    if env.query is not None:
        doc["query"] = {"terms": [{"term": t, "concept": c} for t, c in env.query.associations]}
    return doc


def parse_environment(text: str) -> Environment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnvironmentFormatError(f"malformed environment document: {exc}") from exc
    return environment_from_dict(doc)


def dump_environment(env: Environment) -> str:
    return json.dumps(environment_to_dict(env), indent=2, ensure_ascii=False) + "\n"


def load_environment(path: str | Path) -> Environment:
    return parse_environment(Path(path).read_text(encoding="utf-8"))


def save_environment(env: Environment, path: str | Path) -> None:
    Path(path).write_text(dump_environment(env), encoding="utf-8")


def build_environment(
    labels: Iterable[str],
    relations: Iterable[tuple[str, int, int]],
    pages: dict[str, Iterable[str]] | None = None,
    extra_concepts: dict[str, Iterable[int]] | None = None,
    query: Iterable[tuple[str, int]] | None = None,
) -> Environment:
    """Convenience constructor used by fixtures and the generator."""
    ontology = OntologyGraph(tuple(labels), tuple(RelationEdge(*r) for r in relations))
    extra_concepts = extra_concepts or {}
    page_objs = []
    for pid, rids in (pages or {}).items():
        page = PageSubgraph(pid, frozenset(rids), frozenset(extra_concepts.get(pid, ())))
        page.validate(ontology)
        page_objs.append(page)
    q = None
    if query is not None:
        q = Query(tuple(query))
        q.validate(ontology)
    return Environment(ontology, tuple(page_objs), q)
