"""Command-line entry points: pipeline run, serve, synth, usage-report."""

from __future__ import annotations

import json
from pathlib import Path

import click

from srlboard import DTW_BACKEND
from srlboard.config import load_config
from srlboard.features import export_features_csv
from srlboard.ingest import format_timestamp
from srlboard.pipeline import export_labels_csv, export_run_metadata, run_pipeline
from srlboard.service import ContentStore, UsageStore, create_app
from srlboard.synth import CohortSpec, default_archetypes, generate_cohort
from srlboard.usage import usage_report_dict


@click.group()
def main():
    """Clickstream-to-SRL-profile analytics pipeline and dashboard service."""


@main.group()
def pipeline():
    """Offline pipeline commands."""


@pipeline.command("run")
@click.option("--events", "events_path", required=True, type=click.Path(exists=True))
@click.option("--schedule", "schedule_path", required=True, type=click.Path(exists=True))
@click.option("--grades", "grades_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_dir", default="store", type=click.Path())
@click.option("--out", "out_dir", default=None, type=click.Path(),
              help="Also write feature/label CSV exports here.")
def pipeline_run(events_path, schedule_path, grades_path, config_path, store_dir, out_dir):
    """Run the full pipeline and publish the content bundles."""
    config = load_config(config_path)
    result = run_pipeline(
        Path(events_path).read_text(encoding="utf-8"),
        Path(schedule_path).read_text(encoding="utf-8"),
        Path(grades_path).read_text(encoding="utf-8"),
        config,
    )
    store = ContentStore(store_dir)
    generation = store.publish(result.bundles)
    click.echo(f"dtw backend: {DTW_BACKEND}")
    if result.parse_problems:
        click.echo(f"malformed lines skipped: {len(result.parse_problems)}")
    click.echo(
        f"published generation {generation}: {len(result.bundles)} bundles, "
        f"{len(result.features.roster)} students, {len(result.profiles)} profiles"
    )
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "features.csv").write_text(
            export_features_csv(result.features), encoding="utf-8"
        )
        (out / "labels.csv").write_text(export_labels_csv(result), encoding="utf-8")
        (out / "run_metadata.json").write_text(
            json.dumps(export_run_metadata(result), indent=2), encoding="utf-8"
        )
        click.echo(f"exports written to {out}")


@main.command()
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@click.option("--store", "store_dir", default="store", type=click.Path())
def serve(port, host, store_dir):
    """Serve published content over HTTP."""
    import uvicorn

    uvicorn.run(create_app(store_dir), host=host, port=port)


@main.command()
@click.option("--students", default=292, type=int)
@click.option("--weeks", default=10, type=int)
@click.option("--profiles", default=5, type=int, help="Number of planted archetypes.")
@click.option("--seed", default=42, type=int)
@click.option("--noise", default=1.0, type=float)
@click.option("--out", "out_dir", default="synth-data", type=click.Path())
def synth(students, weeks, profiles, seed, noise, out_dir):
    """Generate a synthetic cohort with planted behavior archetypes."""
    spec = CohortSpec(
        students=students,
        weeks=weeks,
        archetypes=default_archetypes(profiles),
        noise=noise,
        seed=seed,
    )
    cohort = generate_cohort(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "events.tsv").write_text(cohort.events_tsv, encoding="utf-8")
    (out / "schedule.csv").write_text(cohort.schedule_csv, encoding="utf-8")
    (out / "grades.csv").write_text(cohort.grades_csv, encoding="utf-8")
    (out / "truth.csv").write_text(cohort.truth_csv, encoding="utf-8")
    config = {
        "course_id": "synthetic-course",
        "week_zero": format_timestamp(cohort.week_zero),
        "weeks": cohort.weeks,
        "k_profiles": profiles,
        "seed": seed,
    }
    (out / "config.json").write_text(json.dumps(config, indent=2), encoding="utf-8")
    click.echo(
        f"wrote {students} students x {weeks} weeks "
        f"({len(spec.archetypes)} archetypes) to {out}"
    )


@main.command("usage-report")
@click.option("--min-p", default=0.12, type=float)
@click.option("--store", "store_dir", default="store", type=click.Path())
@click.option("--no-self-loops", is_flag=True, default=False)
def usage_report(min_p, store_dir, no_self_loops):
    """Print dwell statistics and the filtered transition edges."""
    usage_store = UsageStore(Path(store_dir) / "usage")
    report = usage_report_dict(
        usage_store.events(), min_p=min_p, include_self_loops=not no_self_loops
    )
    click.echo(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
