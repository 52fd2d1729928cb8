"""In-memory heterogeneous temporal 2-mode activity networks.

A bundle holds one temporal multigraph per relation type. Character
vertices (people) connect to entity vertices (institutions, projects,
publications, ...) through dated activity edges. Parallel edges between
the same character/entity pair are first-class: two stints at the same
employer are two edges. The character-to-character projection with full
edge provenance is derived, never stored.

Vertex identity is an opaque string id. Display names never key
anything; resolving which same-named vertices are actually the same
person is the job of the screening and similarity layers built on top.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator


class GraphError(Exception):
    """Base class for bundle construction and lookup failures."""


class UnknownVertexError(GraphError):
    def __init__(self, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f"unknown vertex id: {vertex_id!r}")


class VertexKindError(GraphError):
    """A character id was used where an entity id is required, or vice versa."""


class DuplicateIdError(GraphError):
    pass


class SealedBundleError(GraphError):
    """Mutation was attempted on a bundle that has been sealed."""


class HeterogeneityError(GraphError):
    """The bundle does not have at least two vertex types and one relation type."""


class VertexKind(Enum):
    CHARACTER = "character"
    ENTITY = "entity"


@dataclass(frozen=True, order=True)
class TimeInterval:
    """Closed integer interval, by default in years."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not isinstance(self.start, int) or not isinstance(self.end, int):
            raise ValueError("interval bounds must be integers")
        if self.start < 0 or self.end < 0:
            raise ValueError(f"interval bounds must be non-negative: [{self.start}, {self.end}]")
        if self.end < self.start:
            raise ValueError(f"inverted interval: end {self.end} < start {self.start}")

    @property
    def duration(self) -> int:
        """Inclusive length: a single-year activity has duration 1."""
        return self.end - self.start + 1


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: VertexKind
    type_label: str
    display_name: str


@dataclass(frozen=True)
class TemporalEdge:
    """One activity fact: character took part in entity during interval."""

    relation_id: str
    character: str
    entity: str
    relation_type: str
    interval: TimeInterval


def _as_interval(interval: TimeInterval | tuple[int, int]) -> TimeInterval:
    if isinstance(interval, TimeInterval):
        return interval
    start, end = interval
    return TimeInterval(start, end)


class TemporalActivityNetwork:
    """All edges of one relation type, with per-vertex adjacency indexes."""

    def __init__(self, relation_type: str):
        self.relation_type = relation_type
        self._edges: dict[str, TemporalEdge] = {}
        self._by_character: dict[str, list[str]] = {}
        self._by_entity: dict[str, list[str]] = {}

    def __len__(self) -> int:
        return len(self._edges)

    def _add(self, edge: TemporalEdge) -> None:
        self._edges[edge.relation_id] = edge
        self._by_character.setdefault(edge.character, []).append(edge.relation_id)
        self._by_entity.setdefault(edge.entity, []).append(edge.relation_id)

    def edges(self) -> Iterator[TemporalEdge]:
        return iter(self._edges.values())

    def edge(self, relation_id: str) -> TemporalEdge:
        return self._edges[relation_id]

    def edges_of_character(self, character: str) -> list[TemporalEdge]:
        return [self._edges[rid] for rid in self._by_character.get(character, [])]

    def edges_at_entity(self, entity: str) -> list[TemporalEdge]:
        return [self._edges[rid] for rid in self._by_entity.get(entity, [])]

    def entities(self) -> list[str]:
        return list(self._by_entity)

    def neighbor_counts(self, character: str) -> Counter[str]:
        """Number of edges from `character` to each entity neighbor."""
        return Counter(self._edges[rid].entity for rid in self._by_character.get(character, []))

    def degree(self, character: str) -> int:
        return len(self._by_character.get(character, []))


class NetworkBundle:
    """A set of temporal activity subnetworks over a shared vertex registry.

    Build by calling :meth:`add_vertex` / :meth:`add_edge`, then
    :meth:`seal`. A sealed bundle is immutable and safe to share across
    readers; merging or planting produces a new bundle.
    """

    def __init__(self, time_unit: str = "year"):
        self.time_unit = time_unit
        self._vertices: dict[str, Vertex] = {}
        self._subnetworks: dict[str, TemporalActivityNetwork] = {}
        self._declared_relation_types: list[str] = []
        self._sealed = False
        self._next_character = 1
        self._next_entity = 1
        self._next_relation = 1

    # -- construction -----------------------------------------------------

    def _require_mutable(self) -> None:
        if self._sealed:
            raise SealedBundleError("bundle is sealed; build a new one instead of mutating")

    def declare_relation_type(self, label: str) -> None:
        """Register a relation type so it counts toward |B| even if unused."""
        self._require_mutable()
        if not label:
            raise ValueError("relation type label must be nonempty")
        if label not in self._declared_relation_types:
            self._declared_relation_types.append(label)
            self._subnetworks.setdefault(label, TemporalActivityNetwork(label))

    def add_vertex(
        self,
        kind: VertexKind,
        type_label: str,
        display_name: str,
        vertex_id: str | None = None,
    ) -> str:
        self._require_mutable()
        if not type_label:
            raise ValueError("type_label must be nonempty")
        if vertex_id is None:
            if kind is VertexKind.CHARACTER:
                vertex_id, self._next_character = f"c{self._next_character:06d}", self._next_character + 1
            else:
                vertex_id, self._next_entity = f"e{self._next_entity:06d}", self._next_entity + 1
        if vertex_id in self._vertices:
            raise DuplicateIdError(f"vertex id already registered: {vertex_id!r}")
        self._vertices[vertex_id] = Vertex(vertex_id, kind, type_label, display_name)
        return vertex_id

    def add_edge(
        self,
        character: str,
        entity: str,
        relation_type: str,
        interval: TimeInterval | tuple[int, int],
        relation_id: str | None = None,
    ) -> str:
        self._require_mutable()
        cv = self.vertex(character)
        ev = self.vertex(entity)
        if cv.kind is not VertexKind.CHARACTER:
            raise VertexKindError(f"{character!r} is not a character vertex")
        if ev.kind is not VertexKind.ENTITY:
            raise VertexKindError(f"{entity!r} is not an entity vertex")
        span = _as_interval(interval)
        if relation_id is None:
            relation_id, self._next_relation = f"r{self._next_relation:06d}", self._next_relation + 1
        for tan in self._subnetworks.values():
            if relation_id in tan._edges:
                raise DuplicateIdError(f"relation id already registered: {relation_id!r}")
        self.declare_relation_type(relation_type)
        edge = TemporalEdge(relation_id, character, entity, relation_type, span)
        self._subnetworks[relation_type]._add(edge)
        return relation_id

    def seal(self) -> "NetworkBundle":
        self._sealed = True
        return self

    @property
    def sealed(self) -> bool:
        return self._sealed

    # -- lookups ----------------------------------------------------------

    def vertex(self, vertex_id: str) -> Vertex:
        try:
            return self._vertices[vertex_id]
        except KeyError:
            raise UnknownVertexError(vertex_id) from None

    def has_vertex(self, vertex_id: str) -> bool:
        return vertex_id in self._vertices

    def vertices(self, kind: VertexKind | None = None) -> list[Vertex]:
        if kind is None:
            return list(self._vertices.values())
        return [v for v in self._vertices.values() if v.kind is kind]

    def character_ids(self) -> list[str]:
        return sorted(v.id for v in self._vertices.values() if v.kind is VertexKind.CHARACTER)

    def entity_ids(self) -> list[str]:
        return sorted(v.id for v in self._vertices.values() if v.kind is VertexKind.ENTITY)

    def relation_types(self) -> list[str]:
        """Declared relation types, in declaration / first-seen order."""
        return list(self._declared_relation_types)

    def subnetwork(self, relation_type: str) -> TemporalActivityNetwork:
        try:
            return self._subnetworks[relation_type]
        except KeyError:
            raise GraphError(f"no subnetwork for relation type {relation_type!r}") from None

    def subnetworks(self) -> list[TemporalActivityNetwork]:
        return [self._subnetworks[b] for b in self._declared_relation_types]

    def edges(self) -> Iterator[TemporalEdge]:
        for beta in self._declared_relation_types:
            yield from self._subnetworks[beta].edges()

    @property
    def edge_count(self) -> int:
        return sum(len(t) for t in self._subnetworks.values())

    @property
    def vertex_count(self) -> int:
        return len(self._vertices)

    def vertex_type_labels(self) -> set[str]:
        return {v.type_label for v in self._vertices.values()}

    def max_end(self) -> int | None:
        """Latest end time over all edges; the default `now` anchor."""
        ends = [e.interval.end for e in self.edges()]
        return max(ends) if ends else None

    def neighbor_counts(self, character: str, relation_type: str) -> Counter[str]:
        tan = self._subnetworks.get(relation_type)
        if tan is None:
            return Counter()
        return tan.neighbor_counts(character)

    def validate(self) -> None:
        """Check the heterogeneity requirement: >= 2 vertex types, >= 1 relation type."""
        labels = self.vertex_type_labels()
        if len(labels) < 2:
            raise HeterogeneityError(f"need at least 2 vertex type labels, have {sorted(labels)}")
        if len(self._declared_relation_types) < 1:
            raise HeterogeneityError("need at least 1 relation type")


@dataclass(frozen=True)
class OneModeRelation:
    """A derived character-to-character tie, with provenance.

    One relation exists per (shared entity, edge pair). Endpoints are
    canonically ordered so the projection is symmetric by construction.
    """

    a: str
    b: str
    entity: str
    relation_type: str
    edge_a: str
    edge_b: str


@dataclass
class OneModeNetwork:
    characters: list[str]
    relations: list[OneModeRelation] = field(default_factory=list)

    def multiplicity(self, x: str, y: str) -> int:
        lo, hi = min(x, y), max(x, y)
        return sum(1 for rel in self.relations if rel.a == lo and rel.b == hi)

    def neighbors(self, x: str) -> set[str]:
        out = set()
        for rel in self.relations:
            if rel.a == x:
                out.add(rel.b)
            elif rel.b == x:
                out.add(rel.a)
        return out


def project_one_mode(bundle: NetworkBundle) -> OneModeNetwork:
    """Project the 2-mode bundle onto its character vertices.

    For every entity shared by two distinct characters, each cross pair
    of their incident edges induces one relation, so co-activity
    multiplicity is preserved (two stints alongside one stint yield two
    ties, not one).
    """
    relations: list[OneModeRelation] = []
    for tan in bundle.subnetworks():
        for entity in sorted(tan.entities()):
            edges = tan.edges_at_entity(entity)
            per_character: dict[str, list[TemporalEdge]] = {}
            for edge in edges:
                per_character.setdefault(edge.character, []).append(edge)
            chars = sorted(per_character)
            for i, x in enumerate(chars):
                for y in chars[i + 1 :]:
                    for ex in per_character[x]:
                        for ey in per_character[y]:
                            relations.append(
                                OneModeRelation(x, y, entity, tan.relation_type, ex.relation_id, ey.relation_id)
                            )
    relations.sort(key=lambda r: (r.a, r.b, r.entity, r.relation_type, r.edge_a, r.edge_b))
    return OneModeNetwork(characters=bundle.character_ids(), relations=relations)


def rebuild(
    vertices: Iterable[Vertex],
    edges: Iterable[TemporalEdge],
    relation_types: Iterable[str],
    time_unit: str = "year",
) -> NetworkBundle:
    """Assemble a sealed bundle from explicit vertices and edges.

    Ids are preserved verbatim; used by the merge engine and the test
    generators, which derive new bundles from existing ones.
    """
    bundle = NetworkBundle(time_unit=time_unit)
    for beta in relation_types:
        bundle.declare_relation_type(beta)
    for v in vertices:
        bundle.add_vertex(v.kind, v.type_label, v.display_name, vertex_id=v.id)
    for e in edges:
        bundle.add_edge(e.character, e.entity, e.relation_type, e.interval, relation_id=e.relation_id)
    return bundle.seal()
