"""Three views of one dense trace.

At 1280 rows the exact line rendering collapses into solid ink; a row
window keeps lines readable but hides grouping; glyphs abstract the
pattern at any scale. This script writes all three as SVGs to demos/out/.
"""

from pathlib import Path

from traceglyph import (
    RenderConfig,
    Viewport,
    analyze_trace,
    emit_svg,
    gen_trace,
    layout_full,
    layout_glyph,
    layout_partial,
    ring_descriptor,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

descriptor = ring_descriptor(1280, 3, 8)
session = analyze_trace(gen_trace(descriptor, timesteps=2))
window = (0, session.max_level + 1)
config = RenderConfig()

full = layout_full(session.timeline, Viewport(960, 600, window))
print(f"full view: {len(full.lines)} lines over 1280 rows "
      f"({600 / 1280:.3f} px per row: unreadable by design)")
(out_dir / "ring_full.svg").write_bytes(emit_svg(full, config))

partial = layout_partial(session.timeline, Viewport(960, 600, window, (0, 8)))
print(f"partial view: {len(partial.lines)} lines over the first 8 rows")
(out_dir / "ring_partial.svg").write_bytes(emit_svg(partial, config))

glyph = layout_glyph(session.timeline, session.classifications, Viewport(960, 600, window))
print(f"glyph view: {len(glyph.glyphs)} glyphs "
      f"({glyph.glyphs[0].partitions} partitions each: the pattern is grouped)")
(out_dir / "ring_glyph.svg").write_bytes(emit_svg(glyph, config))

for name in ("ring_full", "ring_partial", "ring_glyph"):
    print(f"wrote {out_dir / name}.svg")
