"""One loaded trace with its derived timeline, rounds, and classifications.

The canonical analysis pipeline is parse, match, level, align, slice into
rounds, classify each round. Everything is computed once and shared read-only
between the CLI and the HTTP service.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .detect import Classification, classify_round, classification_to_json
from .scene import (
    DEFAULT_MODE_THRESHOLD,
    LayoutError,
    Scene,
    UnclassifiedRoundError,
    Viewport,
    choose_mode,
    layout_full,
    layout_glyph,
    layout_partial,
)
from .timeline import CommRound, LogicalTimeline, align_by_code, assign_levels, extract_rounds
from .trace import Trace, match_communication, parse_trace


@dataclass(frozen=True)
class TraceSession:
    trace: Trace
    timeline: LogicalTimeline
    rounds: tuple[CommRound, ...]
    classifications: tuple[Classification, ...]

    @property
    def num_pes(self) -> int:
        return self.trace.num_pes

    @property
    def max_level(self) -> int:
        return self.timeline.max_level

    def meta(self) -> dict:
        return {
            "num_pes": self.num_pes,
            "max_level": self.max_level,
            "rounds": [
                {
                    "send_level": r.send_level,
                    "classification": classification_to_json(c),
                }
                for r, c in zip(self.rounds, self.classifications)
            ],
        }


def analyze_trace(trace: Trace) -> TraceSession:
    edges = match_communication(trace)
    timeline = align_by_code(assign_levels(trace, edges))
    rounds = tuple(extract_rounds(timeline))
    classifications = tuple(classify_round(r) for r in rounds)
    return TraceSession(trace, timeline, rounds, classifications)


def load_session(path: str | Path) -> TraceSession:
    return analyze_trace(parse_trace(Path(path).read_bytes()))


def build_viewport(
    session: TraceSession,
    width: float,
    height: float,
    rows: tuple[int, int] | None = None,
    levels: tuple[int, int] | None = None,
) -> Viewport:
    time_window = levels if levels is not None else (0, session.max_level + 1)
    return Viewport(width, height, time_window, rows)


def scene_for(session: TraceSession, viewport: Viewport, mode: str) -> Scene:
    """Lay out one scene in an explicitly requested mode."""
    if mode == "full":
        return layout_full(session.timeline, viewport)
    if mode == "partial":
        return layout_partial(session.timeline, viewport)
    if mode == "glyph":
        return layout_glyph(session.timeline, session.classifications, viewport)
    raise LayoutError(f"unknown mode {mode!r}")


def auto_scene(
    session: TraceSession,
    viewport: Viewport,
    threshold_rows: int = DEFAULT_MODE_THRESHOLD,
) -> Scene:
    """Pick the representation from the zoom level and lay it out.

    When the glyph representation is chosen but some visible round is
    unclassified, falls back to exact lines over the same window.
    """
    mode = choose_mode(viewport, session.num_pes, threshold_rows)
    if mode == "glyph":
        try:
            return layout_glyph(session.timeline, session.classifications, viewport)
        except UnclassifiedRoundError:
            pass
    if viewport.row_window is None:
        viewport = Viewport(
            viewport.width_px,
            viewport.height_px,
            viewport.time_window,
            (0, session.num_pes),
        )
    return layout_partial(session.timeline, viewport)


def serialize_meta(session: TraceSession) -> str:
    return json.dumps(session.meta(), separators=(",", ":"))
