"""End-to-end runs of the command-line pipeline."""

from __future__ import annotations

import csv
import json

from tapmerge import load
from tapmerge.cli import main

from conftest import SCHOLARS_CSV, SCHOLARS_MANIFEST


def run(*argv: str) -> int:
    return main(list(argv))


def base_args(out) -> list[str]:
    return ["--records", str(SCHOLARS_CSV), "--manifest", str(SCHOLARS_MANIFEST), "--out", str(out)]


def test_ingest_writes_report_and_graph(tmp_path):
    assert run("ingest", *base_args(tmp_path)) == 0
    report = json.loads((tmp_path / "load_report.json").read_text())
    assert report["total_rows"] == 34
    assert report["rejected"] == []
    graph = json.loads((tmp_path / "graph.json").read_text())
    assert len(graph["edges"]) == 34


def test_screen_writes_candidates(tmp_path):
    assert run("screen", *base_args(tmp_path)) == 0
    rows = list(csv.DictReader((tmp_path / "candidates.csv").open()))
    assert {(r["x_name"], r["y_name"]) for r in rows} == {
        ("Faye Wu", "Fei Wu"),
        ("ShaoJia Zhu", "ShaoNan Zhu"),
    }


def test_screen_on_empty_dataset_succeeds(tmp_path):
    records = tmp_path / "empty.csv"
    records.write_text("character_id,character_name,entity_name,entity_type,relation_type,start,end\n")
    out = tmp_path / "out"
    assert run("screen", "--records", str(records), "--out", str(out)) == 0
    assert (out / "candidates.csv").read_text().splitlines() == [
        "x_id,x_name,y_id,y_name,structure_error"
    ]


def test_simtap_single_pair_by_name(tmp_path):
    assert run("simtap", *base_args(tmp_path), "--pair", "Faye Wu,Fei Wu", "--now", "2014") == 0
    rows = list(csv.DictReader((tmp_path / "similarity.csv").open()))
    assert len(rows) == 1
    assert rows[0]["work"] == "1.0000"
    assert rows[0]["research"] == "1.0000"
    assert float(rows[0]["simtap"]) == 0.9654


def test_simtap_unknown_vertex_exits_one(tmp_path, caplog):
    code = run("simtap", *base_args(tmp_path), "--pair", "Faye Wu,nobody-here")
    assert code == 1
    assert "nobody-here" in caplog.text


def test_dedupe_requires_theta(tmp_path):
    assert run("dedupe", *base_args(tmp_path)) == 1


def test_dedupe_full_pipeline(tmp_path):
    assert run("dedupe", *base_args(tmp_path), "--theta", "0.80", "--now", "2014") == 0
    for name in (
        "candidates.csv",
        "similarity.csv",
        "groups.json",
        "merged_records.csv",
        "merged_graph.json",
        "merge_audit.json",
        "run_manifest.json",
        "load_report.json",
    ):
        assert (tmp_path / name).exists(), name

    groups = json.loads((tmp_path / "groups.json").read_text())
    assert groups["theta"] == 0.8
    assert groups["now"] == 2014
    assert len(groups["groups"]) == 1

    merged, _ = load(tmp_path / "merged_records.csv", SCHOLARS_MANIFEST)
    names = sorted({merged.vertex(c).display_name for c in merged.character_ids()})
    assert len(merged.character_ids()) == 7
    assert "Faye Wu" in names
    assert "Fei Wu" not in names

    audit = json.loads((tmp_path / "merge_audit.json").read_text())
    assert audit["removed_vertices"] == 1
    assert audit["dropped_edges"] == 6
    assert audit["transferred_edges"] == 1

    manifest = json.loads((tmp_path / "run_manifest.json").read_text())
    assert manifest["theta"] == 0.8
    assert manifest["now"] == 2014
    assert "sha256" in manifest["inputs"]["records"]
    assert "workers" not in manifest


def test_dedupe_groups_both_pairs_at_lower_theta(tmp_path):
    assert run("dedupe", *base_args(tmp_path), "--theta", "0.70") == 0
    groups = json.loads((tmp_path / "groups.json").read_text())
    assert len(groups["groups"]) == 2
    merged, _ = load(tmp_path / "merged_records.csv", SCHOLARS_MANIFEST)
    assert len(merged.character_ids()) == 6


def test_export_dot(tmp_path):
    assert run("export", *base_args(tmp_path), "--format", "dot") == 0
    text = (tmp_path / "graph.dot").read_text()
    assert text.startswith("graph activity {")
    assert text.count(" -- ") == 34


def test_missing_records_file_exits_two(tmp_path):
    assert run("screen", "--records", str(tmp_path / "nope.csv"), "--out", str(tmp_path)) == 2


def test_strict_mode_failure_exits_one(tmp_path):
    records = tmp_path / "bad.csv"
    records.write_text(
        "character_id,character_name,entity_name,entity_type,relation_type,start,end\n"
        ",A,Uni,institution,study,2005,2001\n"
    )
    assert run("ingest", "--records", str(records), "--out", str(tmp_path / "o"), "--strict") == 1


def test_future_now_anchor_exits_one(tmp_path):
    assert run("simtap", *base_args(tmp_path), "--pair", "Faye Wu,Fei Wu", "--now", "1980") == 1
