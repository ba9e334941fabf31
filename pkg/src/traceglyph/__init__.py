"""traceglyph: communication-pattern aware Gantt charts for execution traces.

Parses parallel execution traces, places events on an idealized logical time
axis, detects offset/ring/exchange communication patterns, and renders the
result as full, partial (row window), or glyph-abstracted charts, at scales
where exact lines degenerate into solid ink.
"""

from .detect import Classification, Unknown, canonicalize, classify_round, same_stride
from .patterns import (
    Continuous,
    Grouped,
    PatternDescriptor,
    PatternError,
    StencilSpec,
    exchange_descriptor,
    gen_exchange,
    gen_offset,
    gen_ring,
    gen_stencil,
    gen_trace,
    generate_round,
    offset_descriptor,
    ring_descriptor,
)
from .scene import (
    Glyph,
    LayoutError,
    Scene,
    UnclassifiedRoundError,
    Viewport,
    choose_mode,
    glyph_geometry,
    layout_full,
    layout_glyph,
    layout_partial,
    partition_count,
    scene_to_dict,
    stride_to_angle,
)
from .session import TraceSession, analyze_trace, auto_scene, load_session, scene_for
from .svg import RenderConfig, emit_svg
from .timeline import (
    CommRound,
    CycleError,
    LogicalTimeline,
    align_by_code,
    assign_levels,
    extract_rounds,
)
from .trace import (
    CommEdge,
    Event,
    MatchError,
    Trace,
    TraceFormatError,
    match_communication,
    parse_trace,
    serialize_trace,
)

__version__ = "0.1.0"
