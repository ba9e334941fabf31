import re
import xml.etree.ElementTree as ET

import pytest

from traceglyph.patterns import gen_trace, ring_descriptor
from traceglyph.scene import Scene, Viewport, glyph_geometry, layout_full, layout_glyph
from traceglyph.session import analyze_trace
from traceglyph.svg import RenderConfig, emit_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def glyph_scene():
    session = analyze_trace(gen_trace(ring_descriptor(64, 3, 8), 2))
    vp = Viewport(960, 600, (0, session.max_level + 1))
    return layout_glyph(session.timeline, session.classifications, vp)


def full_scene():
    session = analyze_trace(gen_trace(ring_descriptor(64, 3, 8), 2))
    vp = Viewport(960, 600, (0, session.max_level + 1))
    return layout_full(session.timeline, vp)


class TestEmit:
    def test_empty_scene_has_only_background(self):
        scene = Scene(Viewport(200, 100, (0, 1)), "full")
        root = ET.fromstring(emit_svg(scene))
        children = list(root)
        assert len(children) == 1
        assert children[0].tag == f"{SVG_NS}rect"

    def test_byte_determinism(self):
        scene = glyph_scene()
        assert emit_svg(scene) == emit_svg(scene)
        assert emit_svg(glyph_scene()) == emit_svg(scene)

    def test_glyph_scene_single_filter_on_rect_group(self):
        root = ET.fromstring(emit_svg(glyph_scene()))
        filters = root.findall(f".//{SVG_NS}filter")
        assert len(filters) == 1
        filtered = [el for el in root.iter() if el.get("filter")]
        assert len(filtered) == 1
        assert filtered[0].tag == f"{SVG_NS}g"
        assert filtered[0].find(f"{SVG_NS}rect") is not None
        assert filtered[0].get("filter") == f"url(#{filters[0].get('id')})"

    def test_line_scene_has_no_filter(self):
        root = ET.fromstring(emit_svg(full_scene()))
        assert not root.findall(f".//{SVG_NS}filter")

    def test_segment_counts_preserved(self):
        scene = glyph_scene()
        root = ET.fromstring(emit_svg(scene))
        lines = root.findall(f".//{SVG_NS}line")
        expect = sum(len(glyph_geometry(g).segments) for g in scene.glyphs)
        assert len(lines) == expect

        full = full_scene()
        root = ET.fromstring(emit_svg(full))
        assert len(root.findall(f".//{SVG_NS}line")) == len(full.lines)

    def test_three_decimal_formatting(self):
        payload = emit_svg(full_scene()).decode()
        for value in re.findall(r'\s(?:x1|y1|x2|y2|x|y|width|height)="([^"%]+)"', payload):
            assert re.fullmatch(r"-?\d+\.\d{3}", value), value

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RenderConfig(stroke_width_px=0)
        with pytest.raises(ValueError):
            RenderConfig(blur_std_dev=-1)

    def test_custom_palette_applied(self):
        cfg = RenderConfig(background="#000000", rect_color="#111111")
        payload = emit_svg(full_scene(), cfg).decode()
        assert 'fill="#000000"' in payload and 'fill="#111111"' in payload


class TestGolden:
    def test_reference_scenes_stable(self):
        # Regenerate with tests/make_goldens.py after intentional changes.
        from make_goldens import CONFIGS, GOLDEN_DIR, render

        for name, descriptor in CONFIGS.items():
            golden = (GOLDEN_DIR / f"{name}.svg").read_bytes()
            assert render(descriptor) == golden, f"golden drift: {name}"
