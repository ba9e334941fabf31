"""Regenerate the golden SVGs compared by test_render_svg golden checks.

Run from the repository root after an intentional rendering change:

    python tests/make_goldens.py
"""

from pathlib import Path

from traceglyph.patterns import exchange_descriptor, gen_trace, offset_descriptor, ring_descriptor
from traceglyph.scene import Viewport, layout_glyph
from traceglyph.session import analyze_trace
from traceglyph.svg import emit_svg

GOLDEN_DIR = Path(__file__).parent / "golden"

CONFIGS = {
    "continuous_offset": offset_descriptor(1280, 4),
    "grouped_offset": offset_descriptor(1280, 2, 16),
    "continuous_ring": ring_descriptor(1280, 3),
    "grouped_ring": ring_descriptor(1280, 3, 8),
    "exchange": exchange_descriptor(1280, 8),
}


def render(descriptor) -> bytes:
    session = analyze_trace(gen_trace(descriptor, 2))
    viewport = Viewport(960, 600, (0, session.max_level + 1))
    scene = layout_glyph(session.timeline, session.classifications, viewport)
    return emit_svg(scene)


def main() -> None:
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, descriptor in CONFIGS.items():
        path = GOLDEN_DIR / f"{name}.svg"
        path.write_bytes(render(descriptor))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
