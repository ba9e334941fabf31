"""Deterministic standalone SVG emission for scenes.

Output is byte-stable across runs and platforms: every numeric attribute is
formatted with exactly three decimal places and element order is fixed
(background, interval rectangles, then lines or glyph strokes).
"""

from __future__ import annotations

from dataclasses import dataclass

from .scene import Scene, glyph_geometry


@dataclass(frozen=True)
class RenderConfig:
    stroke_width_px: float = 1.5
    background: str = "#ffffff"
    rect_color: str = "#c7d4e4"
    line_color: str = "#1c1c1c"
    glyph_color: str = "#123652"
    blur_std_dev: float = 2.0

    def __post_init__(self) -> None:
        if self.stroke_width_px <= 0:
            raise ValueError("stroke width must be positive")
        if self.blur_std_dev < 0:
            raise ValueError("blur std dev must be >= 0")


def _f(value: float) -> str:
    return f"{value:.3f}"


def emit_svg(scene: Scene, config: RenderConfig | None = None) -> bytes:
    """Render a scene to a self-contained SVG 1.1 document.

    The interval-rectangle layer comes first and carries the gaussian blur
    filter when the scene asks for a blurred background; lines and glyph
    strokes are always drawn crisp on top.
    """
    cfg = config or RenderConfig()
    width = scene.viewport.width_px
    height = scene.viewport.height_px
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
    ]
    if scene.blur_background:
        out.append(
            '<defs><filter id="bg-blur" x="-5%" y="-5%" width="110%" height="110%">'
            f'<feGaussianBlur stdDeviation="{_f(cfg.blur_std_dev)}"/></filter></defs>'
        )
    out.append(
        f'<rect x="0.000" y="0.000" width="{_f(width)}" height="{_f(height)}" '
        f'fill="{cfg.background}"/>'
    )
    if scene.rects:
        blur = ' filter="url(#bg-blur)"' if scene.blur_background else ""
        out.append(f'<g fill="{cfg.rect_color}"{blur}>')
        for r in scene.rects:
            out.append(
                f'<rect x="{_f(r.x)}" y="{_f(r.y)}" width="{_f(r.w)}" height="{_f(r.h)}"/>'
            )
        out.append("</g>")
    if scene.mode == "glyph":
        if scene.glyphs:
            out.append(
                f'<g stroke="{cfg.glyph_color}" stroke-width="{_f(cfg.stroke_width_px)}" '
                'stroke-linecap="round" fill="none">'
            )
            for glyph in scene.glyphs:
                for x1, y1, x2, y2 in glyph_geometry(glyph).segments:
                    out.append(
                        f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>'
                    )
            out.append("</g>")
    elif scene.lines:
        out.append(
            f'<g stroke="{cfg.line_color}" stroke-width="{_f(cfg.stroke_width_px)}" fill="none">'
        )
        for l in scene.lines:
            out.append(
                f'<line x1="{_f(l.x1)}" y1="{_f(l.y1)}" x2="{_f(l.x2)}" y2="{_f(l.y2)}"/>'
            )
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
