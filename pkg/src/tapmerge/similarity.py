"""Temporally weighted activity-path similarity.

Every edge gets an integer temporal weight

    (now + 1 - start) * (end + 1 - start)

so recent and long-running activities weigh more. A length-2 path
character -> entity -> character scores the product of its two edge
weights. Summing path weights per shared entity collapses to a dot
product of per-entity aggregated weight vectors, and the similarity in
one subnetwork is

    2 * W(paths x..y) / (W(paths x..x) + W(paths y..y))

which is 1 exactly when the two aggregated vectors are equal, and 0
when the characters share no entities. The bundle-level score is the
plain mean over all declared subnetworks, counting a subnetwork a
character is absent from as 0.

All accumulation is exact integer arithmetic; the single final division
is the only float operation, so results are bit-reproducible.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .graph import GraphError, NetworkBundle, TemporalActivityNetwork, TemporalEdge, VertexKind
from .screening import CandidateSet
from .unionfind import UnionFind


class FutureEdgeError(GraphError):
    """An edge starts after the chosen `now` anchor."""


@dataclass(frozen=True)
class TemporalWeight:
    relation_id: str
    weight: int


@dataclass(frozen=True)
class TapPath:
    """One character -> entity -> character path with its edge weights."""

    start: str
    entity: str
    end: str
    relation_a: str
    relation_b: str
    weight_a: int
    weight_b: int

    @property
    def weight(self) -> int:
        return self.weight_a * self.weight_b


@dataclass(frozen=True)
class NeighborWeightVector:
    """Per-subnetwork map from entity id to summed temporal edge weight."""

    character: str
    now: int
    weights: dict[str, dict[str, int]]

    def for_subnetwork(self, relation_type: str) -> dict[str, int]:
        return self.weights.get(relation_type, {})


@dataclass(frozen=True)
class SimilarityResult:
    x: str
    y: str
    per_relation_type: dict[str, float]
    aggregate: float
    now: int
    subnetwork_count: int


@dataclass
class RedundantGroupSet:
    """Disjoint duplicate groups: components of the >= theta pair graph."""

    groups: list[list[str]]
    theta: float
    now: int

    def pairs(self) -> list[tuple[str, str]]:
        out = []
        for group in self.groups:
            for i, x in enumerate(group):
                for y in group[i + 1 :]:
                    out.append((x, y))
        return out

    def to_dict(self) -> dict:
        return {"theta": self.theta, "now": self.now, "groups": self.groups}


def edge_weight(edge: TemporalEdge, now: int) -> TemporalWeight:
    if edge.interval.start > now:
        raise FutureEdgeError(
            f"edge {edge.relation_id} starts at {edge.interval.start}, after now={now}"
        )
    weight = (now + 1 - edge.interval.start) * (edge.interval.duration)
    return TemporalWeight(edge.relation_id, weight)


def path_weight(path: TapPath) -> int:
    return path.weight_a * path.weight_b


def enumerate_paths(tan: TemporalActivityNetwork, x: str, y: str, now: int) -> list[TapPath]:
    """Every activity path from x to y, one per (entity, edge, edge) triple.

    With x == y the full double loop applies, so each edge pairs with
    itself and with its parallels in both orders.
    """
    edges_x = tan.edges_of_character(x)
    edges_y = edges_x if x == y else tan.edges_of_character(y)
    paths = []
    for ex in edges_x:
        wx = edge_weight(ex, now).weight
        for ey in edges_y:
            if ey.entity != ex.entity:
                continue
            wy = edge_weight(ey, now).weight
            paths.append(TapPath(x, ex.entity, y, ex.relation_id, ey.relation_id, wx, wy))
    return paths


def subnetwork_weights(tan: TemporalActivityNetwork, character: str, now: int) -> dict[str, int]:
    """Aggregated per-entity weight of one character in one subnetwork."""
    sums: dict[str, int] = {}
    for edge in tan.edges_of_character(character):
        sums[edge.entity] = sums.get(edge.entity, 0) + edge_weight(edge, now).weight
    return sums


def neighbor_weight_vector(bundle: NetworkBundle, character: str, now: int) -> NeighborWeightVector:
    if bundle.vertex(character).kind is not VertexKind.CHARACTER:
        raise GraphError(f"{character!r} is not a character vertex")
    weights = {
        beta: subnetwork_weights(bundle.subnetwork(beta), character, now)
        for beta in bundle.relation_types()
    }
    return NeighborWeightVector(character, now, weights)


def _similarity_from_vectors(vec_x: dict[str, int], vec_y: dict[str, int]) -> float:
    # accumulate in sorted entity order: exact ints, but keep the order pinned anyway
    w_xy = sum(weight * vec_y.get(entity, 0) for entity, weight in sorted(vec_x.items()))
    w_xx = sum(weight * weight for _, weight in sorted(vec_x.items()))
    w_yy = sum(weight * weight for _, weight in sorted(vec_y.items()))
    denominator = w_xx + w_yy
    if denominator == 0:
        return 0.0
    return (2 * w_xy) / denominator


def simtap_beta(tan: TemporalActivityNetwork, x: str, y: str, now: int) -> float:
    """Path similarity of x and y within one subnetwork, in [0, 1]."""
    return _similarity_from_vectors(
        subnetwork_weights(tan, x, now), subnetwork_weights(tan, y, now)
    )


def combine_subnetwork_scores(scores: Sequence[float]) -> float:
    """Bundle-level similarity: arithmetic mean over all subnetworks."""
    if not scores:
        return 0.0
    return sum(scores) / len(scores)


def simtap(bundle: NetworkBundle, x: str, y: str, now: int) -> SimilarityResult:
    for vid in (x, y):
        if bundle.vertex(vid).kind is not VertexKind.CHARACTER:
            raise GraphError(f"{vid!r} is not a character vertex")
    per_beta = {
        beta: simtap_beta(bundle.subnetwork(beta), x, y, now) for beta in bundle.relation_types()
    }
    return SimilarityResult(
        x=x,
        y=y,
        per_relation_type=per_beta,
        aggregate=combine_subnetwork_scores(list(per_beta.values())),
        now=now,
        subnetwork_count=len(per_beta),
    )


def resolve_now(bundle: NetworkBundle, now: int | None) -> int:
    """Explicit anchor if given, else the latest end time in the bundle."""
    if now is not None:
        return now
    latest = bundle.max_end()
    if latest is None:
        raise GraphError("cannot infer `now` from a bundle with no edges; pass it explicitly")
    return latest


# -- batch computation -------------------------------------------------------

_WorkerPayload = tuple[dict[str, dict[str, dict[str, int]]], list[str], list[tuple[str, str]]]


def _similarity_rows(payload: _WorkerPayload) -> list[tuple[str, str, list[float]]]:
    vectors, relation_types, pairs = payload
    rows = []
    for x, y in pairs:
        per_beta = [
            _similarity_from_vectors(vectors[x].get(beta, {}), vectors[y].get(beta, {}))
            for beta in relation_types
        ]
        rows.append((x, y, per_beta))
    return rows


def similarity_for_pairs(
    bundle: NetworkBundle,
    pairs: Sequence[tuple[str, str]],
    now: int,
    workers: int = 1,
) -> list[SimilarityResult]:
    """Similarity for each pair, in input order.

    Aggregated weight vectors are computed once and shared; with
    `workers` > 1 the pair list is chunked across processes. Results are
    identical regardless of worker count.
    """
    relation_types = bundle.relation_types()
    characters = sorted({c for pair in pairs for c in pair})
    vectors = {c: neighbor_weight_vector(bundle, c, now).weights for c in characters}

    if workers <= 1 or len(pairs) < 2 * workers:
        rows = _similarity_rows((vectors, relation_types, list(pairs)))
    else:
        chunk_size = (len(pairs) + workers - 1) // workers
        chunks = [list(pairs[i : i + chunk_size]) for i in range(0, len(pairs), chunk_size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_similarity_rows, [(vectors, relation_types, chunk) for chunk in chunks])
        rows = [row for part in parts for row in part]

    results = []
    for x, y, per_beta in rows:
        scores = dict(zip(relation_types, per_beta))
        results.append(
            SimilarityResult(x, y, scores, combine_subnetwork_scores(per_beta), now, len(relation_types))
        )
    return results


def group_by_threshold(results: Iterable[SimilarityResult], theta: float, now: int) -> RedundantGroupSet:
    if not 0 < theta <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta}")
    dsu = UnionFind()
    for result in results:
        if result.aggregate >= theta:
            dsu.union(result.x, result.y)
    return RedundantGroupSet(groups=dsu.groups(), theta=theta, now=now)


def threshold_groups(
    candidates: CandidateSet,
    bundle: NetworkBundle,
    theta: float,
    now: int,
    workers: int = 1,
) -> RedundantGroupSet:
    """Confirmed duplicate groups among screened candidate pairs."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must be in (0, 1], got {theta}")
    results = similarity_for_pairs(bundle, candidates.pair_ids(), now, workers=workers)
    return group_by_threshold(results, theta, now)


# -- reports -----------------------------------------------------------------


def write_similarity_csv(
    bundle: NetworkBundle, results: Sequence[SimilarityResult], path: str | Path
) -> None:
    """One row per pair, one column per subnetwork in declaration order."""
    relation_types = bundle.relation_types()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x_id", "x_name", "y_id", "y_name", *relation_types, "simtap"])
        for result in results:
            writer.writerow(
                [
                    result.x,
                    bundle.vertex(result.x).display_name,
                    result.y,
                    bundle.vertex(result.y).display_name,
                    *(f"{result.per_relation_type[b]:.4f}" for b in relation_types),
                    f"{result.aggregate:.4f}",
                ]
            )


def write_groups_json(groups: RedundantGroupSet, path: str | Path) -> None:
    Path(path).write_text(json.dumps(groups.to_dict(), indent=2) + "\n", encoding="utf-8")
