"""Load activity records from flat files and export bundles back out.

The record schema is a flat UTF-8 CSV with header

    character_id,character_name,entity_name,entity_type,relation_type,start,end

`character_id` may be blank, in which case the exact name string keys the
character. Entities are keyed by (name, type) exact match. An optional
JSON manifest declares the relation and entity type vocabularies,
the time unit, and a fixed `now` anchor.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .graph import NetworkBundle, TemporalEdge, VertexKind

RECORDS_HEADER = ["character_id", "character_name", "entity_name", "entity_type", "relation_type", "start", "end"]

CHARACTER_TYPE_LABEL = "person"

EXPORT_FORMATS = ("records-csv", "graph-json", "dot")


class IngestError(Exception):
    pass


@dataclass(frozen=True)
class TransactionRecord:
    """One activity fact as it appears in the input file."""

    character_name: str
    entity_name: str
    entity_type: str
    relation_type: str
    start: int
    end: int
    character_id: str | None = None

    @property
    def character_key(self) -> str:
        return self.character_id if self.character_id else self.character_name


@dataclass
class DatasetManifest:
    relation_types: list[str] = field(default_factory=list)
    entity_types: list[str] = field(default_factory=list)
    time_unit: str = "year"
    now: int | None = None

    def __post_init__(self) -> None:
        if len(set(self.relation_types)) != len(self.relation_types):
            raise IngestError("manifest declares duplicate relation types")
        if len(set(self.entity_types)) != len(self.entity_types):
            raise IngestError("manifest declares duplicate entity types")

    @classmethod
    def from_json(cls, path: str | Path) -> "DatasetManifest":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls(
            relation_types=list(raw.get("relation_types", [])),
            entity_types=list(raw.get("entity_types", [])),
            time_unit=raw.get("time_unit", "year"),
            now=raw.get("now"),
        )

    def to_json(self, path: str | Path) -> None:
        doc = {
            "relation_types": self.relation_types,
            "entity_types": self.entity_types,
            "time_unit": self.time_unit,
            "now": self.now,
        }
        Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class RejectedRow:
    line: int
    reason: str
    raw: str


@dataclass
class LoadReport:
    total_rows: int = 0
    loaded_rows: int = 0
    rejected: list[RejectedRow] = field(default_factory=list)
    discovered_relation_types: list[str] = field(default_factory=list)
    discovered_entity_types: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_rows": self.total_rows,
            "loaded_rows": self.loaded_rows,
            "rejected": [{"line": r.line, "reason": r.reason, "raw": r.raw} for r in self.rejected],
            "discovered_relation_types": self.discovered_relation_types,
            "discovered_entity_types": self.discovered_entity_types,
        }


def _parse_row(row: dict[str, str], line: int) -> TransactionRecord:
    for name in ("character_name", "entity_name", "entity_type", "relation_type"):
        if not (row.get(name) or "").strip():
            raise IngestError(f"line {line}: empty {name}")
    try:
        start = int(row["start"])
        end = int(row["end"])
    except (KeyError, ValueError):
        raise IngestError(f"line {line}: start/end are not integers") from None
    if start < 0 or end < 0:
        raise IngestError(f"line {line}: negative time point")
    if end < start:
        raise IngestError(f"line {line}: inverted interval")
    character_id = (row.get("character_id") or "").strip() or None
    return TransactionRecord(
        character_name=row["character_name"].strip(),
        entity_name=row["entity_name"].strip(),
        entity_type=row["entity_type"].strip(),
        relation_type=row["relation_type"].strip(),
        start=start,
        end=end,
        character_id=character_id,
    )


def load_records(
    records: list[TransactionRecord],
    manifest: DatasetManifest | None = None,
) -> NetworkBundle:
    """Build a sealed bundle from already-validated records."""
    manifest = manifest or DatasetManifest()
    bundle = NetworkBundle(time_unit=manifest.time_unit)
    for beta in manifest.relation_types:
        bundle.declare_relation_type(beta)
    characters: dict[str, str] = {}
    entities: dict[tuple[str, str], str] = {}
    for rec in records:
        ckey = rec.character_key
        if ckey not in characters:
            characters[ckey] = bundle.add_vertex(
                VertexKind.CHARACTER, CHARACTER_TYPE_LABEL, rec.character_name, vertex_id=rec.character_id
            )
        ekey = (rec.entity_name, rec.entity_type)
        if ekey not in entities:
            entities[ekey] = bundle.add_vertex(VertexKind.ENTITY, rec.entity_type, rec.entity_name)
        bundle.add_edge(characters[ckey], entities[ekey], rec.relation_type, (rec.start, rec.end))
    return bundle.seal()


def load(
    records_path: str | Path,
    manifest_path: str | Path | None = None,
    strict: bool = False,
) -> tuple[NetworkBundle, LoadReport]:
    """Parse a records CSV (and optional manifest) into a sealed bundle.

    Malformed rows are skipped and reported, or fatal under `strict`.
    Under `strict` a relation type absent from the manifest is also fatal.
    """
    manifest = DatasetManifest.from_json(manifest_path) if manifest_path else DatasetManifest()
    report = LoadReport()
    records: list[TransactionRecord] = []
    with open(records_path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is not None and list(reader.fieldnames) != RECORDS_HEADER:
            raise IngestError(
                f"unexpected header {reader.fieldnames}; expected {','.join(RECORDS_HEADER)}"
            )
        for line, row in enumerate(reader, start=2):
            report.total_rows += 1
            try:
                rec = _parse_row(row, line)
                if strict and manifest.relation_types and rec.relation_type not in manifest.relation_types:
                    raise IngestError(f"line {line}: undeclared relation type {rec.relation_type!r}")
            except IngestError as exc:
                if strict:
                    raise
                report.rejected.append(
                    RejectedRow(line, str(exc).split(": ", 1)[-1], ",".join((row.get(k) or "") for k in RECORDS_HEADER))
                )
                continue
            records.append(rec)
            report.loaded_rows += 1
            if rec.relation_type not in manifest.relation_types and rec.relation_type not in report.discovered_relation_types:
                report.discovered_relation_types.append(rec.relation_type)
            if rec.entity_type not in manifest.entity_types and rec.entity_type not in report.discovered_entity_types:
                report.discovered_entity_types.append(rec.entity_type)
    bundle = load_records(records, manifest)
    return bundle, report


# -- exports ---------------------------------------------------------------


def _sorted_edges(bundle: NetworkBundle) -> list[TemporalEdge]:
    return sorted(bundle.edges(), key=lambda e: (e.character, e.relation_type, e.entity, e.interval, e.relation_id))


def export_records_csv(bundle: NetworkBundle, path: str | Path) -> None:
    """Write a record list that reloads to an isomorphic bundle."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_HEADER)
        for edge in _sorted_edges(bundle):
            character = bundle.vertex(edge.character)
            entity = bundle.vertex(edge.entity)
            writer.writerow(
                [
                    character.id,
                    character.display_name,
                    entity.display_name,
                    entity.type_label,
                    edge.relation_type,
                    edge.interval.start,
                    edge.interval.end,
                ]
            )


def graph_document(bundle: NetworkBundle) -> dict:
    return {
        "vertices": [
            {"id": v.id, "kind": v.kind.value, "type": v.type_label, "name": v.display_name}
            for v in sorted(bundle.vertices(), key=lambda v: v.id)
        ],
        "edges": [
            {
                "id": e.relation_id,
                "character": e.character,
                "entity": e.entity,
                "relation_type": e.relation_type,
                "start": e.interval.start,
                "end": e.interval.end,
            }
            for e in sorted(bundle.edges(), key=lambda e: e.relation_id)
        ],
    }


def export_graph_json(bundle: NetworkBundle, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph_document(bundle), indent=2) + "\n", encoding="utf-8")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(bundle: NetworkBundle, path: str | Path) -> None:
    """Render the 2-mode graph for eyeballing: characters oval, entities boxed."""
    lines = ["graph activity {"]
    for v in sorted(bundle.vertices(), key=lambda v: v.id):
        shape = "ellipse" if v.kind is VertexKind.CHARACTER else "box"
        lines.append(f"  {_dot_quote(v.id)} [label={_dot_quote(v.display_name)} shape={shape}];")
    for e in sorted(bundle.edges(), key=lambda e: e.relation_id):
        label = f"{e.relation_type} {e.interval.start}-{e.interval.end}"
        lines.append(f"  {_dot_quote(e.character)} -- {_dot_quote(e.entity)} [label={_dot_quote(label)}];")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def export(bundle: NetworkBundle, fmt: str, path: str | Path) -> None:
    if fmt == "records-csv":
        export_records_csv(bundle, path)
    elif fmt == "graph-json":
        export_graph_json(bundle, path)
    elif fmt == "dot":
        export_dot(bundle, path)
    else:
        raise IngestError(f"unknown export format {fmt!r}; expected one of {', '.join(EXPORT_FORMATS)}")
