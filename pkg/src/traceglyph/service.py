"""HTTP service: trace metadata and on-demand scenes for the viewer.

One trace is loaded per process; everything derived from it is immutable, so
requests can be served concurrently and responses are cacheable by their full
query string. Endpoints:

* ``GET /api/meta``  -> ``{num_pes, max_level, rounds:[{send_level, classification}]}``
* ``GET /api/scene?rows=A:B&levels=C:D&w=960&h=600[&mode=...]`` -> scene JSON

Static viewer assets, when present, are served at ``/``.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .scene import (
    DEFAULT_MODE_THRESHOLD,
    LayoutError,
    MODES,
    UnclassifiedRoundError,
    scene_to_dict,
)
from .session import TraceSession, auto_scene, build_viewport, scene_for, serialize_meta

CACHE_HEADER = {"Cache-Control": "public, max-age=3600"}

THRESHOLD_ENV_VAR = "TRACE_GLYPH_THRESHOLD"


def mode_threshold() -> int:
    """Visible-row threshold for the line/glyph switch, env-overridable."""
    raw = os.environ.get(THRESHOLD_ENV_VAR)
    if raw is None:
        return DEFAULT_MODE_THRESHOLD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THRESHOLD_ENV_VAR} must be an integer, got {raw!r}") from None
    if value < 2:
        raise ValueError(f"{THRESHOLD_ENV_VAR} must be >= 2, got {value}")
    return value


def _parse_span(raw: str, what: str) -> tuple[int, int]:
    parts = raw.split(":")
    if len(parts) != 2:
        raise HTTPException(400, f"{what} must look like A:B, got {raw!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise HTTPException(400, f"{what} must be integers, got {raw!r}") from None
    if hi <= lo:
        raise HTTPException(400, f"{what} window {raw!r} is empty")
    return lo, hi


def create_app(
    session: TraceSession,
    viewer_dir: str | Path | None = None,
    threshold_rows: int | None = None,
) -> FastAPI:
    app = FastAPI(title="traceglyph", openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    threshold = threshold_rows if threshold_rows is not None else mode_threshold()
    meta_body = serialize_meta(session)

    @app.get("/api/meta")
    def get_meta() -> Response:
        return Response(meta_body, media_type="application/json", headers=CACHE_HEADER)

    @app.get("/api/scene")
    def get_scene(
        rows: str | None = None,
        levels: str | None = None,
        w: str = "960",
        h: str = "600",
        mode: str | None = None,
    ) -> Response:
        try:
            width, height = float(w), float(h)
        except ValueError:
            raise HTTPException(400, f"w and h must be numbers, got {w!r}, {h!r}") from None
        row_window = _parse_span(rows, "rows") if rows is not None else None
        level_window = _parse_span(levels, "levels") if levels is not None else None
        if mode is not None and mode not in MODES:
            raise HTTPException(400, f"mode must be one of {MODES}, got {mode!r}")
        if mode == "full" and row_window is not None:
            raise HTTPException(400, "full mode shows all rows; omit the rows window")
        try:
            viewport = build_viewport(session, width, height, row_window, level_window)
            if mode is None:
                scene = auto_scene(session, viewport, threshold)
            else:
                scene = scene_for(session, viewport, mode)
        except UnclassifiedRoundError as exc:
            raise HTTPException(422, str(exc)) from None
        except LayoutError as exc:
            raise HTTPException(400, str(exc)) from None
        body = json.dumps(scene_to_dict(scene), separators=(",", ":"))
        return Response(body, media_type="application/json", headers=CACHE_HEADER)

    if viewer_dir is not None and Path(viewer_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(viewer_dir), html=True), name="viewer")
    else:

        @app.get("/")
        def index() -> Response:
            return Response(
                "<!doctype html><title>traceglyph</title>"
                "<p>Viewer assets not found. Build the frontend and restart with "
                "<code>--viewer-dir</code>, or use <code>/api/meta</code> and "
                "<code>/api/scene</code> directly.</p>",
                media_type="text/html",
            )

    return app


def run_server(
    session: TraceSession,
    host: str = "127.0.0.1",
    port: int = 8080,
    viewer_dir: str | Path | None = None,
) -> None:
    import uvicorn

    uvicorn.run(create_app(session, viewer_dir=viewer_dir), host=host, port=port)
