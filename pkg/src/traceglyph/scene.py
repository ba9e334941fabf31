"""Resolution-independent draw lists for the three chart representations.

A Scene is a flat list of primitives (row-interval rectangles, communication
line segments, pattern glyphs) in CSS pixel coordinates, y growing downward,
PE 0 on the top row. Three layouts exist:

* full:    every PE row, exact communication lines
* partial: a row window, exact lines clipped at the window boundary
* glyph:   abstract pattern glyphs over blurred interval rectangles

Scenes are immutable and layout is deterministic: the same timeline and
viewport always produce the identical scene.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .detect import Classification, Unknown
from .patterns import Grouped, PatternDescriptor
from .timeline import LogicalTimeline, extract_rounds, intervals

MODES = ("full", "partial", "glyph")

LINE_SPACING = 8.0          # px between repeated glyph strokes
MIN_PARTITION_HEIGHT = 60.0  # px of glyph height per grouping partition
MAX_PARTITIONS = 8
PROTRUSION_CAP = 4
CROSS_LINE_MIN, CROSS_LINE_MAX = 1, 5
ANGLE_MIN_DEG, ANGLE_MAX_DEG = 15.0, 60.0
DEFAULT_MODE_THRESHOLD = 64

GLYPH_WIDTH_FRACTION = 0.45   # of the round's level-band span
GLYPH_MIN_WIDTH = 24.0
GLYPH_VERTICAL_MARGIN = 0.02  # of viewport height, top and bottom
PARTITION_FILL = 0.85         # body height fraction of each partition slot
NUDGE_GAP = 4.0


class LayoutError(ValueError):
    """A viewport or classification precondition was violated."""


class UnclassifiedRoundError(LayoutError):
    """Glyph layout was asked to draw a round without a known pattern."""


@dataclass(frozen=True)
class Viewport:
    """Pixel size plus the visible window in rows and logical steps.

    Windows are half open: ``row_window=(a, b)`` shows rows a..b-1 and
    ``time_window=(c, d)`` shows logical steps c..d-1. ``row_window=None``
    shows every row.
    """

    width_px: float
    height_px: float
    time_window: tuple[int, int]
    row_window: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if not (
            math.isfinite(self.width_px)
            and math.isfinite(self.height_px)
            and self.width_px > 0
            and self.height_px > 0
        ):
            raise LayoutError("viewport must have finite positive size")
        c, d = self.time_window
        if d <= c:
            raise LayoutError(f"empty time window {self.time_window}")
        if self.row_window is not None:
            a, b = self.row_window
            if b <= a:
                raise LayoutError(f"empty row window {self.row_window}")


@dataclass(frozen=True)
class RectShape:
    x: float
    y: float
    w: float
    h: float
    label: str


@dataclass(frozen=True)
class LineShape:
    x1: float
    y1: float
    x2: float
    y2: float
    src: int
    dst: int


@dataclass(frozen=True)
class Glyph:
    """An abstract pattern drawing: kind, box, stroke angle, and multiplicities.

    ``partitions`` >= 2 exactly when the pattern is grouped; ``protrusions``
    is nonzero only for rings and ``cross_lines`` only for exchanges.
    ``send_level`` ties the glyph back to the communication round it depicts.
    """

    kind: str
    bbox: tuple[float, float, float, float]
    angle_deg: float
    partitions: int
    protrusions: int = 0
    cross_lines: int = 0
    send_level: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("offset", "ring", "exchange"):
            raise LayoutError(f"unknown glyph kind {self.kind!r}")
        if not (ANGLE_MIN_DEG <= self.angle_deg <= ANGLE_MAX_DEG):
            raise LayoutError(f"glyph angle {self.angle_deg} outside [15, 60]")
        if self.partitions < 1:
            raise LayoutError("glyph needs at least one partition")


@dataclass(frozen=True)
class Scene:
    viewport: Viewport
    mode: str
    rects: tuple[RectShape, ...] = ()
    lines: tuple[LineShape, ...] = ()
    glyphs: tuple[Glyph, ...] = ()
    blur_background: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise LayoutError(f"unknown mode {self.mode!r}")
        if self.mode == "glyph":
            if self.lines or not self.blur_background:
                raise LayoutError("glyph scenes have no lines and a blurred background")
        else:
            if self.glyphs or self.blur_background:
                raise LayoutError("line scenes have no glyphs and no blur")


@dataclass(frozen=True)
class GlyphGeometry:
    """Resolved stroke segments for one glyph; degenerate marks a box too
    small to hold the minimum two body strokes."""

    segments: tuple[tuple[float, float, float, float], ...]
    degenerate: bool


class _Bands:
    """Maps logical steps to equal-width x bands within the time window."""

    def __init__(self, viewport: Viewport):
        self.first, self.last = viewport.time_window
        self.width = viewport.width_px / (self.last - self.first)

    def x0(self, level: int) -> float:
        return (level - self.first) * self.width

    def x1(self, level: int) -> float:
        return (level - self.first + 1) * self.width

    def center(self, level: int) -> float:
        return (level - self.first + 0.5) * self.width

    def contains(self, level: int) -> bool:
        return self.first <= level < self.last


def _check_windows(timeline: LogicalTimeline, viewport: Viewport) -> None:
    c, d = viewport.time_window
    if c < 0 or d > timeline.max_level + 1:
        raise LayoutError(
            f"time window {viewport.time_window} outside [0, {timeline.max_level + 1}]"
        )
    if viewport.row_window is not None:
        a, b = viewport.row_window
        if a < 0 or b > timeline.trace.num_pes:
            raise LayoutError(
                f"row window {viewport.row_window} outside [0, {timeline.trace.num_pes}]"
            )


def _layout_rects(timeline, viewport, first_row, last_row) -> tuple[RectShape, ...]:
    bands = _Bands(viewport)
    c, d = viewport.time_window
    row_h = viewport.height_px / (last_row - first_row)
    rects = []
    for pe, name, start, end in intervals(timeline):
        if not (first_row <= pe < last_row):
            continue
        if end < c or start > d - 1:
            continue
        x0 = bands.x0(max(start, c))
        x1 = bands.x1(min(end, d - 1))
        rects.append(RectShape(x0, (pe - first_row) * row_h, x1 - x0, row_h, name))
    return tuple(rects)


def _layout_lines(timeline, viewport, first_row, last_row) -> tuple[LineShape, ...]:
    bands = _Bands(viewport)
    row_h = viewport.height_px / (last_row - first_row)
    height = viewport.height_px

    def row_y(pe: int) -> float:
        return (pe - first_row + 0.5) * row_h

    lines = []
    for le in timeline.edges:
        if not (bands.contains(le.send_level) and bands.contains(le.recv_level)):
            continue
        src, dst = le.edge.src_pe, le.edge.dst_pe
        src_in = first_row <= src < last_row
        dst_in = first_row <= dst < last_row
        if not (src_in or dst_in):
            continue
        x1, y1 = bands.center(le.send_level), row_y(src)
        x2, y2 = bands.center(le.recv_level), row_y(dst)
        if not (src_in and dst_in):
            # Clip the outside endpoint at the window boundary.
            x_out, y_out = (x1, y1) if not src_in else (x2, y2)
            x_in, y_in = (x2, y2) if not src_in else (x1, y1)
            boundary = 0.0 if y_out < 0 else height
            t = (boundary - y_in) / (y_out - y_in)
            x_cut = x_in + t * (x_out - x_in)
            if not src_in:
                x1, y1 = x_cut, boundary
            else:
                x2, y2 = x_cut, boundary
        lines.append(LineShape(x1, y1, x2, y2, src, dst))
    return tuple(lines)


def layout_full(timeline: LogicalTimeline, viewport: Viewport) -> Scene:
    """Every PE as a row; exact interval rectangles and communication lines."""
    if viewport.row_window is not None:
        raise LayoutError("full layout does not take a row window")
    _check_windows(timeline, viewport)
    num_pes = timeline.trace.num_pes
    return Scene(
        viewport=viewport,
        mode="full",
        rects=_layout_rects(timeline, viewport, 0, num_pes),
        lines=_layout_lines(timeline, viewport, 0, num_pes),
    )


def layout_partial(timeline: LogicalTimeline, viewport: Viewport) -> Scene:
    """A row window with exact lines.

    Lines with exactly one endpoint inside the window are clipped at the
    window boundary; lines with no endpoint inside are omitted.
    """
    if viewport.row_window is None:
        raise LayoutError("partial layout requires a row window")
    a, b = viewport.row_window
    if b - a < 2:
        raise LayoutError("row window must span at least 2 rows")
    _check_windows(timeline, viewport)
    return Scene(
        viewport=viewport,
        mode="partial",
        rects=_layout_rects(timeline, viewport, a, b),
        lines=_layout_lines(timeline, viewport, a, b),
    )


def stride_to_angle(stride: int) -> float:
    """Linear stride-to-angle hint over the common stride range.

    Clamps to 15 degrees at stride <= 2 and 60 degrees at stride >= 10;
    monotone in between. The angle suggests the magnitude of the send
    distance without encoding it exactly.
    """
    if stride < 1:
        raise LayoutError("stride must be >= 1")
    clamped = min(max(stride, 2), 10)
    return ANGLE_MIN_DEG + (ANGLE_MAX_DEG - ANGLE_MIN_DEG) * (clamped - 2) / 8


def partition_count(descriptor: PatternDescriptor, box_height_px: float) -> int:
    """How many times a grouped pattern repeats inside its glyph box.

    Driven by the available vertical space, deliberately independent of the
    true group count: grouping is shown qualitatively, not measured.
    """
    if not isinstance(descriptor.grouping, Grouped):
        raise LayoutError("partition_count applies to grouped descriptors only")
    return min(max(int(box_height_px // MIN_PARTITION_HEIGHT), 2), MAX_PARTITIONS)


def _glyph_for_round(descriptor, send_level, recv_level, bands, viewport) -> Glyph:
    span_x0 = bands.x0(send_level)
    span_x1 = bands.x1(recv_level)
    span_w = span_x1 - span_x0
    width = min(span_w, max(GLYPH_MIN_WIDTH, GLYPH_WIDTH_FRACTION * span_w))
    height = viewport.height_px * (1 - 2 * GLYPH_VERTICAL_MARGIN)
    y = viewport.height_px * GLYPH_VERTICAL_MARGIN
    cx = (span_x0 + span_x1) / 2
    grouped = isinstance(descriptor.grouping, Grouped)
    return Glyph(
        kind=descriptor.family,
        bbox=(cx - width / 2, y, width, height),
        angle_deg=stride_to_angle(descriptor.stride),
        partitions=partition_count(descriptor, height) if grouped else 1,
        protrusions=min(descriptor.stride, PROTRUSION_CAP) if descriptor.family == "ring" else 0,
        cross_lines=min(max(descriptor.stride, CROSS_LINE_MIN), CROSS_LINE_MAX)
        if descriptor.family == "exchange"
        else 0,
        send_level=send_level,
    )


def layout_glyph(
    timeline: LogicalTimeline,
    classifications: Sequence[Classification],
    viewport: Viewport,
) -> Scene:
    """Abstract glyphs per classified round over blurred interval rectangles.

    ``classifications`` must parallel ``extract_rounds(timeline)``. Glyphs
    are x-centered on the midpoint of their round's level-band span; boxes
    that would overlap are nudged right, in round order, until disjoint.
    Raises LayoutError when a visible round is Unknown.
    """
    _check_windows(timeline, viewport)
    rounds = extract_rounds(timeline)
    if len(classifications) != len(rounds):
        raise LayoutError(
            f"{len(classifications)} classifications for {len(rounds)} rounds"
        )
    recv_top: dict[int, int] = {}
    for le in timeline.edges:
        cur = recv_top.get(le.send_level)
        recv_top[le.send_level] = le.recv_level if cur is None else max(cur, le.recv_level)
    bands = _Bands(viewport)
    c, d = viewport.time_window
    glyphs = []
    last_right: float | None = None
    for round_, cls in zip(rounds, classifications):
        send_level = round_.send_level
        recv_level = recv_top[send_level]
        if recv_level < c or send_level > d - 1:
            continue
        if isinstance(cls.result, Unknown):
            raise UnclassifiedRoundError(
                f"round at send level {send_level} is unclassified: {cls.result.reason}"
            )
        glyph = _glyph_for_round(
            cls.result, max(send_level, c), min(recv_level, d - 1), bands, viewport
        )
        x, y, w, h = glyph.bbox
        if last_right is not None and x < last_right + NUDGE_GAP:
            x = last_right + NUDGE_GAP
            glyph = Glyph(
                glyph.kind, (x, y, w, h), glyph.angle_deg, glyph.partitions,
                glyph.protrusions, glyph.cross_lines, glyph.send_level,
            )
        last_right = x + w
        glyphs.append(glyph)
    first_row, last_row = viewport.row_window or (0, timeline.trace.num_pes)
    return Scene(
        viewport=viewport,
        mode="glyph",
        rects=_layout_rects(timeline, viewport, first_row, last_row),
        glyphs=tuple(glyphs),
        blur_background=True,
    )


def choose_mode(viewport: Viewport, num_pes: int, threshold_rows: int = DEFAULT_MODE_THRESHOLD) -> str:
    """Pick lines or glyphs from the zoom level.

    At or below ``threshold_rows`` visible rows individual lines stay
    readable, so the partial representation is used; above it the glyph
    representation takes over.
    """
    if threshold_rows < 2:
        raise LayoutError("threshold must be >= 2 rows")
    if viewport.row_window is not None:
        a, b = viewport.row_window
        visible = b - a
    else:
        visible = num_pes
    return "partial" if visible <= threshold_rows else "glyph"


def _offset_body(x: float, y: float, w: float, h: float, angle_deg: float):
    """Parallel strokes at the glyph angle filling a parallelogram.

    Horizontal extent is capped so a stroke never leaves the box; stroke
    count fills the remaining height at LINE_SPACING. Returns (segments,
    degenerate, body_box) where body_box is the tight parallelogram bounds.
    """
    theta = math.radians(angle_deg)
    tan_t = math.tan(theta)
    w_eff = min(w, h / tan_t)
    drop = w_eff * tan_t
    x0 = x + (w - w_eff) / 2
    if h - drop < LINE_SPACING:
        # Too small for the minimum two strokes: single centered stroke.
        y0 = y + (h - drop) / 2
        seg = (x0, y0, x0 + w_eff, y0 + drop)
        return [seg], True, (x0, y0, w_eff, drop)
    count = int((h - drop) // LINE_SPACING) + 1
    extent = (count - 1) * LINE_SPACING + drop
    y0 = y + (h - extent) / 2
    segments = [
        (x0, y0 + k * LINE_SPACING, x0 + w_eff, y0 + k * LINE_SPACING + drop)
        for k in range(count)
    ]
    return segments, False, (x0, y0, w_eff, extent)


def _ring_protrusions(body_box, angle_deg: float, count: int, partition_h: float):
    """Wrap-around stubs in the empty corners outside the stroke body.

    Stubs slope against the body strokes and end flush with the body's top
    (bottom-left stubs are the 180-degree rotation about the body center).
    Length is capped below half the reach to the first body stroke, so a
    stub can never cross it.
    """
    bx, by, bw, bh = body_box
    theta = math.radians(angle_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    length = 0.2 * partition_h
    cx, cy = bx + bw / 2, by + bh / 2
    segments = []
    for i in range(count):
        x_end = bx + bw - i * LINE_SPACING
        reach = 0.45 * (x_end - bx) / cos_t
        t = min(length, reach)
        if t < 0.5:
            continue
        top = (x_end - t * cos_t, by + t * sin_t, x_end, by)
        bottom = tuple(2 * c - v for c, v in zip((cx, cy, cx, cy), top))
        segments.append(top)
        segments.append(bottom)
    return segments


def _exchange_cross(x: float, y: float, w: float, h: float, angle_deg: float, count: int):
    """A symmetric x of two stroke bundles that never intersect.

    Each bundle holds ``count`` parallel strokes offset vertically by
    LINE_SPACING. Every stroke is cut around the interval where strokes of
    the opposite bundle would cross it, dilated by half the stroke spacing,
    leaving a clear central gap.
    """
    theta = math.radians(angle_deg)
    tan_t = math.tan(theta)
    spread = (count - 1) * LINE_SPACING / 2
    cx, cy = x + w / 2, y + h / 2
    x_half = min(w / 2, (h / 2 - spread) / tan_t)
    margin = (LINE_SPACING / 2) * math.cos(theta)
    if x_half <= margin + 1.0:
        # Too small for cut bundles: one full-box diagonal stroke.
        ext = max(min(w / 2, (h / 2) / tan_t), 0.0)
        seg = (cx - ext, cy - ext * tan_t, cx + ext, cy + ext * tan_t)
        return [seg], True
    offsets = [(j - (count - 1) / 2) * LINE_SPACING for j in range(count)]
    lo_off, hi_off = offsets[0], offsets[-1]
    segments = []

    def cut(off: float, slope: float, gap_lo: float, gap_hi: float):
        left = (-x_half, gap_lo - margin)
        right = (gap_hi + margin, x_half)
        for a, b in (left, right):
            if b - a < 1.0:
                continue
            segments.append((cx + a, cy + off + a * slope, cx + b, cy + off + b * slope))

    for off in offsets:  # falling strokes
        cut(off, tan_t, (lo_off - off) / (2 * tan_t), (hi_off - off) / (2 * tan_t))
    for off in offsets:  # rising strokes
        cut(off, -tan_t, (off - hi_off) / (2 * tan_t), (off - lo_off) / (2 * tan_t))
    return segments, False


def glyph_geometry(glyph: Glyph) -> GlyphGeometry:
    """Resolve a glyph into stroke segments, partition by partition.

    Every partition renders the identical segment list, translated
    vertically: repetition on a non-common scale is the grouping encoding.
    """
    x, y, w, h = glyph.bbox
    n = glyph.partitions
    slot = h / n
    if n == 1:
        py, ph = y, h
    else:
        py = y + slot * (1 - PARTITION_FILL) / 2
        ph = slot * PARTITION_FILL
    if glyph.kind == "exchange":
        base, degenerate = _exchange_cross(x, py, w, ph, glyph.angle_deg, glyph.cross_lines)
    else:
        base, degenerate, body_box = _offset_body(x, py, w, ph, glyph.angle_deg)
        if glyph.kind == "ring":
            base = base + _ring_protrusions(body_box, glyph.angle_deg, glyph.protrusions, ph)
    segments = []
    for i in range(n):
        dy = i * slot
        segments.extend((x1, y1 + dy, x2, y2 + dy) for x1, y1, x2, y2 in base)
    return GlyphGeometry(tuple(segments), degenerate)


def _round3(value: float) -> float:
    return round(value, 3)


def scene_to_dict(scene: Scene) -> dict:
    """JSON-ready form of a scene; includes resolved glyph segments so
    consumers can draw without computing any geometry."""
    viewport = {
        "width_px": _round3(scene.viewport.width_px),
        "height_px": _round3(scene.viewport.height_px),
        "time_window": list(scene.viewport.time_window),
        "row_window": list(scene.viewport.row_window) if scene.viewport.row_window else None,
    }
    glyphs = []
    for g in scene.glyphs:
        geometry = glyph_geometry(g)
        doc = {
            "kind": g.kind,
            "bbox": [_round3(v) for v in g.bbox],
            "angle_deg": _round3(g.angle_deg),
            "partitions": g.partitions,
            "send_level": g.send_level,
            "segments": [[_round3(v) for v in seg] for seg in geometry.segments],
        }
        if g.kind == "ring":
            doc["protrusions"] = g.protrusions
        if g.kind == "exchange":
            doc["cross_lines"] = g.cross_lines
        if geometry.degenerate:
            doc["degenerate"] = True
        glyphs.append(doc)
    return {
        "mode": scene.mode,
        "viewport": viewport,
        "rects": [
            {
                "x": _round3(r.x),
                "y": _round3(r.y),
                "w": _round3(r.w),
                "h": _round3(r.h),
                "label": r.label,
            }
            for r in scene.rects
        ],
        "lines": [
            {
                "x1": _round3(l.x1),
                "y1": _round3(l.y1),
                "x2": _round3(l.x2),
                "y2": _round3(l.y2),
                "src": l.src,
                "dst": l.dst,
            }
            for l in scene.lines
        ],
        "glyphs": glyphs,
        "blur_background": scene.blur_background,
    }
