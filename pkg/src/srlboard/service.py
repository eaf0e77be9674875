"""Content store and HTTP service.

Published bundles live in immutable per-generation directories; a CURRENT
pointer file is swapped atomically (os.replace), so readers pin one
generation and never observe a half-published run. Usage events append to
an NDJSON log with idempotency on (session_id, page_id, entered_at).
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Iterable, Optional, Sequence
from urllib.parse import quote

from srlboard.errors import IncompleteRun, InvalidRange, MalformedEvent, NotFound
from srlboard.insights import (
    BUNDLE_KEYS,
    ContentBundle,
    bundle_from_json,
    bundle_to_json,
)
from srlboard.usage import UsageEvent, usage_event_from_dict, usage_report_dict

HELP_TOPICS: dict[str, str] = {
    "summary": (
        "Weekly statistics for each behavior dimension, with an arrow showing "
        "the trend versus the previous week."
    ),
    "profiles": (
        "Student profiles found by grouping per-dimension behavior labels. "
        "Each profile lists its typical behaviors, member count, and the "
        "average grade of its members."
    ),
    "proactivity": (
        "How far ahead of or behind the course schedule students watch the "
        "lecture videos. Negative delay means watching before the in-person "
        "session (anticipation); positive delay means watching after it."
    ),
    "effort": "Time spent online and clicks on lecture videos per week.",
    "consistency": "Average session length and time online relative to the class.",
    "control": "Video pause frequency and playback-speed changes per week.",
    "regularity": (
        "How concentrated study activity is on particular days of the week "
        "and hours of the day (1 = always the same time, 0 = spread out)."
    ),
    "views": (
        "The aggregated view shows the class as a whole; the groups view "
        "splits each chart by behavior group."
    ),
}


def _bundle_filename(course_id: str, from_week: int, to_week: int, page: str, view: str) -> str:
    return f"{quote(course_id, safe='')}__w{from_week}-{to_week}__{page}__{view}.json"


class Snapshot:
    """Read view pinned to one generation; immutable once created."""

    def __init__(self, root: Path, generation: int):
        self.generation = generation
        self._dir = root / "generations" / f"gen-{generation:06d}"

    def manifest(self) -> dict:
        with open(self._dir / "manifest.json", encoding="utf-8") as fh:
            return json.load(fh)

    def get_raw(
        self, course_id: str, from_week: int, to_week: int, page: str, view: str
    ) -> str:
        if from_week > to_week:
            raise InvalidRange(f"from_week {from_week} > to_week {to_week}")
        path = self._dir / "bundles" / _bundle_filename(
            course_id, from_week, to_week, page, view
        )
        if not path.exists():
            raise NotFound(
                f"no content for ({course_id}, weeks {from_week}-{to_week}, {page}, {view})"
            )
        return path.read_text(encoding="utf-8")

    def get(self, course_id: str, from_week: int, to_week: int, page: str, view: str) -> ContentBundle:
        return bundle_from_json(self.get_raw(course_id, from_week, to_week, page, view))

    def courses(self) -> list[dict]:
        return self.manifest()["courses"]


class ContentStore:
    """Embedded on-disk store with atomic generational publishes."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        (self.root / "generations").mkdir(parents=True, exist_ok=True)
        self._publish_lock = threading.Lock()

    @property
    def _current_path(self) -> Path:
        return self.root / "CURRENT"

    def generation(self) -> int:
        try:
            return int(self._current_path.read_text(encoding="utf-8").strip())
        except FileNotFoundError:
            return 0

    def snapshot(self) -> Snapshot:
        generation = self.generation()
        if generation == 0:
            raise NotFound("nothing published yet")
        return Snapshot(self.root, generation)

    def get_content(
        self, course_id: str, from_week: int, to_week: int, page: str, view: str
    ) -> ContentBundle:
        return self.snapshot().get(course_id, from_week, to_week, page, view)

    def publish(self, bundles: Sequence[ContentBundle]) -> int:
        """Atomically publish a complete run; returns the new generation id."""
        if not bundles:
            raise IncompleteRun("no bundles to publish")
        by_run: dict[tuple[str, int, int], dict[tuple[str, str], ContentBundle]] = {}
        for b in bundles:
            b.validate()
            run_key = (b.course_id, b.week_range[0], b.week_range[1])
            page_key = (b.page_id.value, b.view.value)
            by_run.setdefault(run_key, {})[page_key] = b
        required = {(p.value, v.value) for p, v in BUNDLE_KEYS}
        for run_key, pages in by_run.items():
            missing = required - set(pages)
            if missing:
                raise IncompleteRun(
                    f"run {run_key} missing pages: {sorted(missing)}"
                )

        with self._publish_lock:
            generation = self.generation() + 1
            gen_dir = self.root / "generations" / f"gen-{generation:06d}"
            bundle_dir = gen_dir / "bundles"
            bundle_dir.mkdir(parents=True)
            courses: dict[str, list[list[int]]] = {}
            for (course_id, lo, hi), pages in sorted(by_run.items()):
                courses.setdefault(course_id, []).append([lo, hi])
                for (page, view), bundle in sorted(pages.items()):
                    path = bundle_dir / _bundle_filename(course_id, lo, hi, page, view)
                    path.write_text(bundle_to_json(bundle), encoding="utf-8")
            manifest = {
                "generation": generation,
                "courses": [
                    {"course_id": course_id, "week_ranges": sorted(ranges)}
                    for course_id, ranges in sorted(courses.items())
                ],
            }
            (gen_dir / "manifest.json").write_text(
                json.dumps(manifest, sort_keys=True), encoding="utf-8"
            )
            # all files are on disk before the pointer swap makes them visible
            tmp = self.root / "CURRENT.tmp"
            tmp.write_text(str(generation), encoding="utf-8")
            os.replace(tmp, self._current_path)
            return generation

    def rollback(self) -> int:
        """Point CURRENT back to the previous retained generation."""
        with self._publish_lock:
            generation = self.generation()
            if generation <= 1:
                raise NotFound("no previous generation to roll back to")
            target = generation - 1
            tmp = self.root / "CURRENT.tmp"
            tmp.write_text(str(target), encoding="utf-8")
            os.replace(tmp, self._current_path)
            return target


class UsageStore:
    """Durable append-only usage log, idempotent per dedupe key."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._path = self.root / "usage_events.ndjson"
        self._lock = threading.Lock()
        self._seen: set[tuple[str, str, str]] = set()
        self._events: list[UsageEvent] = []
        if self._path.exists():
            with open(self._path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        event = usage_event_from_dict(json.loads(line))
                        self._seen.add(event.dedupe_key())
                        self._events.append(event)

    def record(self, events: Iterable[UsageEvent]) -> int:
        """Append new events; duplicates by dedupe key are ignored."""
        accepted = 0
        with self._lock, open(self._path, "a", encoding="utf-8") as fh:
            for event in events:
                key = event.dedupe_key()
                if key in self._seen:
                    continue
                self._seen.add(key)
                self._events.append(event)
                fh.write(
                    json.dumps(
                        {
                            "session_id": event.session_id,
                            "page_id": event.page_id,
                            "entered_at": event.entered_at.isoformat(),
                            "left_at": event.left_at.isoformat(),
                        }
                    )
                    + "\n"
                )
                accepted += 1
        return accepted

    def events(self) -> list[UsageEvent]:
        with self._lock:
            return list(self._events)


def get_help(topic_id: str) -> str:
    try:
        return HELP_TOPICS[topic_id]
    except KeyError:
        raise NotFound(f"no help topic {topic_id!r}") from None


def create_app(store_dir: str | Path, admin_token: Optional[str] = None):
    """FastAPI application serving the precomputed content and telemetry."""
    from fastapi import FastAPI, Header, HTTPException, Response

    store = ContentStore(store_dir)
    usage_store = UsageStore(Path(store_dir) / "usage")
    token = admin_token if admin_token is not None else os.environ.get(
        "SRLBOARD_ADMIN_TOKEN", ""
    )

    app = FastAPI(title="srlboard", version="0.1.0")
    app.state.store = store
    app.state.usage_store = usage_store

    @app.get("/courses")
    def courses():
        try:
            snapshot = store.snapshot()
        except NotFound:
            return {"generation": 0, "courses": []}
        return {"generation": snapshot.generation, "courses": snapshot.courses()}

    @app.get("/courses/{course_id}/content")
    def content(course_id: str, from_week: int, to_week: int, page: str, view: str):
        try:
            raw = store.snapshot().get_raw(course_id, from_week, to_week, page, view)
        except InvalidRange as err:
            raise HTTPException(status_code=400, detail=str(err))
        except NotFound as err:
            raise HTTPException(status_code=404, detail=str(err))
        return Response(content=raw, media_type="application/json")

    @app.get("/help/{topic_id}")
    def help_topic(topic_id: str):
        try:
            return {"topic": topic_id, "text": get_help(topic_id)}
        except NotFound as err:
            raise HTTPException(status_code=404, detail=str(err))

    @app.post("/usage/events")
    def record_usage(payload: dict):
        raw_events = payload.get("events")
        if not isinstance(raw_events, list):
            raise HTTPException(status_code=400, detail="body must carry an events list")
        try:
            events = [usage_event_from_dict(e) for e in raw_events]
        except MalformedEvent as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {"accepted": usage_store.record(events)}

    @app.get("/usage/report")
    def usage_report(min_p: float = 0.12, self_loops: bool = True):
        if not 0 <= min_p <= 1:
            raise HTTPException(status_code=400, detail="min_p outside [0, 1]")
        return usage_report_dict(
            usage_store.events(), min_p=min_p, include_self_loops=self_loops
        )

    @app.post("/admin/publish")
    def publish(payload: dict, authorization: str = Header(default="")):
        if token and authorization != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="bad admin token")
        raw_bundles = payload.get("bundles")
        if not isinstance(raw_bundles, list):
            raise HTTPException(status_code=400, detail="body must carry a bundles list")
        try:
            bundles = [bundle_from_json(json.dumps(b)) for b in raw_bundles]
            generation = store.publish(bundles)
        except (IncompleteRun, ValueError) as err:
            raise HTTPException(status_code=409, detail=str(err))
        return {"generation": generation}

    return app
