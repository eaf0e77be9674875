"""CLI tests: synth -> pipeline run -> usage-report round trip."""

import json

import pytest
from click.testing import CliRunner

from srlboard.cli import main
from srlboard.service import ContentStore, UsageStore
from test_service import usage_event


@pytest.fixture
def runner():
    return CliRunner()


def test_synth_writes_all_files(runner, tmp_path):
    out = tmp_path / "data"
    result = runner.invoke(
        main, ["synth", "--students", "25", "--weeks", "3", "--profiles", "5",
               "--seed", "42", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    for name in ("events.tsv", "schedule.csv", "grades.csv", "truth.csv", "config.json"):
        assert (out / name).exists()
    truth_lines = (out / "truth.csv").read_text().strip().splitlines()
    assert len(truth_lines) == 26  # header + 25 students


def test_synth_deterministic(runner, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        result = runner.invoke(
            main, ["synth", "--students", "10", "--weeks", "2", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
    assert (a / "events.tsv").read_bytes() == (b / "events.tsv").read_bytes()
    assert (a / "grades.csv").read_bytes() == (b / "grades.csv").read_bytes()


def test_pipeline_run_publishes_and_exports(runner, tmp_path):
    data = tmp_path / "data"
    store = tmp_path / "store"
    out = tmp_path / "exports"
    assert runner.invoke(
        main, ["synth", "--students", "20", "--weeks", "3", "--out", str(data)]
    ).exit_code == 0

    result = runner.invoke(
        main,
        ["pipeline", "run",
         "--events", str(data / "events.tsv"),
         "--schedule", str(data / "schedule.csv"),
         "--grades", str(data / "grades.csv"),
         "--config", str(data / "config.json"),
         "--store", str(store),
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    assert "published generation 1" in result.output

    content_store = ContentStore(store)
    bundle = content_store.get_content("synthetic-course", 1, 3, "summary", "aggregated")
    assert bundle.page_id.value == "summary"

    labels = (out / "labels.csv").read_text().splitlines()
    assert labels[0] == (
        "student_id,effort_label,consistency_label,regularity_label,"
        "control_label,proactivity_label,profile_id"
    )
    assert len(labels) == 21

    features_csv = (out / "features.csv").read_text().splitlines()
    assert features_csv[0] == "student_id,dimension,feature,w1,w2,w3"

    meta = json.loads((out / "run_metadata.json").read_text())
    assert meta["meta"]["seed"] == 42
    assert meta["roster_size"] == 20


def test_usage_report_command(runner, tmp_path):
    store = tmp_path / "store"
    usage_store = UsageStore(store / "usage")
    usage_store.record([
        usage_event("t1", "summary", 0),
        usage_event("t1", "profiles", 5),
        usage_event("t2", "summary", 60),
        usage_event("t2", "effort", 65),
    ])
    result = runner.invoke(main, ["usage-report", "--min-p", "0.12", "--store", str(store)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    edges = {(e["from"], e["to"]): e["p"] for e in report["edges"]}
    assert edges[("summary", "profiles")] == 0.5
    assert edges[("summary", "effort")] == 0.5
