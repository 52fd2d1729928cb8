"""Collapse confirmed duplicate groups into a corrected bundle.

Each group keeps one representative (the smallest id, for determinism;
provenance keeps every absorbed name reachable). An absorbed vertex's
edge is dropped when the representative already carries the identical
(entity, relation type, interval) fact, and transferred otherwise, so
near-duplicates that disagree on a date lose nothing. Merging operates
on the 2-mode bundle; the 1-mode projection is recomputed afterwards by
callers that need it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

from .graph import GraphError, NetworkBundle, TemporalEdge, VertexKind, rebuild
from .screening import structure_error

Disposition = Literal["drop-as-duplicate", "transfer-to-representative"]


class MergeError(GraphError):
    pass


class StalePlanError(MergeError):
    """The plan was built against a different bundle."""


@dataclass(frozen=True)
class EdgeDisposition:
    relation_id: str
    action: Disposition


@dataclass(frozen=True)
class GroupPlan:
    representative: str
    absorbed: tuple[str, ...]
    dispositions: dict[str, tuple[EdgeDisposition, ...]]


@dataclass
class MergePlan:
    groups: list[GroupPlan]
    bundle_fingerprint: tuple[int, int]

    @property
    def removed_vertex_count(self) -> int:
        return sum(len(g.absorbed) for g in self.groups)


@dataclass
class MergeAudit:
    removed_vertices: int
    dropped_edges: int
    transferred_edges: int
    mapping: dict[str, str]

    def to_dict(self) -> dict:
        return {
            "removed_vertices": self.removed_vertices,
            "dropped_edges": self.dropped_edges,
            "transferred_edges": self.transferred_edges,
            "mapping": dict(sorted(self.mapping.items())),
        }


@dataclass
class MergedNetwork:
    bundle: NetworkBundle
    mapping: dict[str, str]
    audit: MergeAudit


@dataclass
class Violation:
    kind: str
    detail: str


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, detail: str) -> None:
        self.violations.append(Violation(kind, detail))


def _fingerprint(bundle: NetworkBundle) -> tuple[int, int]:
    return (bundle.vertex_count, bundle.edge_count)


def _edge_fact(edge: TemporalEdge) -> tuple[str, str, int, int]:
    return (edge.entity, edge.relation_type, edge.interval.start, edge.interval.end)


def _character_edges(bundle: NetworkBundle, character: str) -> list[TemporalEdge]:
    edges = []
    for tan in bundle.subnetworks():
        edges.extend(tan.edges_of_character(character))
    edges.sort(key=lambda e: (_edge_fact(e), e.relation_id))
    return edges


def plan_merge(
    bundle: NetworkBundle,
    groups: Sequence[Sequence[str]],
    policy: str = "smallest-id",
) -> MergePlan:
    """Decide, per group, who survives and what happens to each absorbed edge.

    Absorbed vertices are processed in id order; a transferred fact
    counts as already present for the next duplicate of it, so the
    representative ends up with each distinct fact exactly once on top
    of its own edges.
    """
    if policy != "smallest-id":
        raise MergeError(f"unknown representative policy {policy!r}")
    seen: set[str] = set()
    plans: list[GroupPlan] = []
    for group in sorted((sorted(set(g)) for g in groups), key=lambda g: g[0] if g else ""):
        if len(group) < 2:
            continue
        for member in group:
            if member in seen:
                raise MergeError(f"vertex {member!r} appears in more than one group")
            seen.add(member)
            if bundle.vertex(member).kind is not VertexKind.CHARACTER:
                raise MergeError(f"cannot merge non-character vertex {member!r}")
        representative, absorbed = group[0], tuple(group[1:])
        known_facts = {_edge_fact(e) for e in _character_edges(bundle, representative)}
        dispositions: dict[str, tuple[EdgeDisposition, ...]] = {}
        for duplicate in absorbed:
            decided = []
            for edge in _character_edges(bundle, duplicate):
                fact = _edge_fact(edge)
                if fact in known_facts:
                    decided.append(EdgeDisposition(edge.relation_id, "drop-as-duplicate"))
                else:
                    known_facts.add(fact)
                    decided.append(EdgeDisposition(edge.relation_id, "transfer-to-representative"))
            dispositions[duplicate] = tuple(decided)
        plans.append(GroupPlan(representative, absorbed, dispositions))
    return MergePlan(groups=plans, bundle_fingerprint=_fingerprint(bundle))


def apply_merge(bundle: NetworkBundle, plan: MergePlan) -> MergedNetwork:
    """Produce the corrected bundle with every absorbed vertex removed."""
    if plan.bundle_fingerprint != _fingerprint(bundle):
        raise StalePlanError("plan was computed against a different bundle")

    action_by_edge: dict[str, tuple[str, Disposition]] = {}
    mapping: dict[str, str] = {}
    for group in plan.groups:
        if not bundle.has_vertex(group.representative):
            raise StalePlanError(f"representative {group.representative!r} missing from bundle")
        for duplicate in group.absorbed:
            mapping[duplicate] = group.representative
            for disposition in group.dispositions.get(duplicate, ()):
                action_by_edge[disposition.relation_id] = (group.representative, disposition.action)

    dropped = transferred = 0
    vertices = [v for v in bundle.vertices() if v.id not in mapping]
    edges: list[TemporalEdge] = []
    for edge in bundle.edges():
        if edge.character not in mapping:
            edges.append(edge)
            continue
        decision = action_by_edge.get(edge.relation_id)
        if decision is None:
            raise StalePlanError(f"edge {edge.relation_id!r} of an absorbed vertex has no disposition")
        representative, action = decision
        if action == "drop-as-duplicate":
            dropped += 1
        else:
            transferred += 1
            edges.append(
                TemporalEdge(edge.relation_id, representative, edge.entity, edge.relation_type, edge.interval)
            )

    merged = rebuild(vertices, edges, bundle.relation_types(), time_unit=bundle.time_unit)
    audit = MergeAudit(
        removed_vertices=len(mapping),
        dropped_edges=dropped,
        transferred_edges=transferred,
        mapping=mapping,
    )
    return MergedNetwork(bundle=merged, mapping=dict(mapping), audit=audit)


def _distinct_facts_to_entity(bundle: NetworkBundle, characters: Sequence[str], entity: str) -> set:
    facts = set()
    for character in characters:
        for edge in _character_edges(bundle, character):
            if edge.entity == entity:
                facts.add((edge.relation_type, edge.interval.start, edge.interval.end))
    return facts


def verify_merge(before: NetworkBundle, after: NetworkBundle, plan: MergePlan) -> VerificationReport:
    """Re-check the merge postconditions from scratch; empty report on success."""
    report = VerificationReport()

    expected_removed = plan.removed_vertex_count
    if after.vertex_count != before.vertex_count - expected_removed:
        report.add(
            "vertex count mismatch",
            f"expected {before.vertex_count - expected_removed} vertices, found {after.vertex_count}",
        )

    absorbed = {dup for group in plan.groups for dup in group.absorbed}
    for vid in absorbed:
        if after.has_vertex(vid):
            report.add("absorbed vertex present", f"{vid} survived the merge")

    for edge in after.edges():
        if not after.has_vertex(edge.character) or not after.has_vertex(edge.entity):
            report.add("dangling endpoint", f"edge {edge.relation_id} references a missing vertex")

    # per-character edge multisets: untouched characters keep theirs exactly,
    # representatives gain exactly the transferred facts
    before_edges = {e.relation_id: e for e in before.edges()}
    expected_facts: dict[str, list] = {}
    for vertex in before.vertices(VertexKind.CHARACTER):
        if vertex.id not in absorbed:
            expected_facts[vertex.id] = [_edge_fact(e) for e in _character_edges(before, vertex.id)]
    for group in plan.groups:
        for duplicate in group.absorbed:
            for disposition in group.dispositions.get(duplicate, ()):
                if disposition.action == "transfer-to-representative":
                    expected_facts[group.representative].append(_edge_fact(before_edges[disposition.relation_id]))
    for vid, expected in expected_facts.items():
        post = sorted(_edge_fact(e) for e in _character_edges(after, vid)) if after.has_vertex(vid) else []
        if sorted(expected) != post:
            report.add("neighbor degree mismatch", f"edge multiset of character {vid} changed")

    # the representative carries the group's distinct facts, nothing lost
    for group in plan.groups:
        members = [group.representative, *group.absorbed]
        entities = set()
        for member in members:
            entities.update(e.entity for e in _character_edges(before, member))
        for entity in sorted(entities):
            pre_facts = _distinct_facts_to_entity(before, members, entity)
            post_facts = _distinct_facts_to_entity(after, [group.representative], entity)
            if pre_facts != post_facts:
                report.add(
                    "entity fact mismatch",
                    f"facts between {entity} and group of {group.representative} changed: "
                    f"{sorted(pre_facts)} -> {sorted(post_facts)}",
                )

    # structure error must stay computable between the survivors
    representatives = sorted(g.representative for g in plan.groups)
    for i, left in enumerate(representatives):
        for right in representatives[i + 1 :]:
            try:
                structure_error(after, left, right)
            except GraphError as exc:
                report.add("structure error recomputation failed", f"{left} vs {right}: {exc}")
    return report


def write_merge_audit(audit: MergeAudit, path: str | Path) -> None:
    Path(path).write_text(json.dumps(audit.to_dict(), indent=2) + "\n", encoding="utf-8")
