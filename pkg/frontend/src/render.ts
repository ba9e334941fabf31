// Canvas drawing of scene primitives, verbatim. The server owns all layout;
// this file just strokes what it was given.

import { GlyphJson, LineJson, SceneJson } from "./types.js";

export const PALETTE = {
  background: "#ffffff",
  rect: "#c7d4e4",
  line: "#1c1c1c",
  glyph: "#123652",
};

const STROKE_WIDTH = 1.5;
const BLUR_PX = 2;

export function drawScene(ctx: CanvasRenderingContext2D, scene: SceneJson): void {
  const { width_px: width, height_px: height } = scene.viewport;
  ctx.save();
  ctx.fillStyle = PALETTE.background;
  ctx.fillRect(0, 0, width, height);

  ctx.save();
  if (scene.blur_background) {
    ctx.filter = `blur(${BLUR_PX}px)`;
  }
  ctx.fillStyle = PALETTE.rect;
  for (const rect of scene.rects) {
    ctx.fillRect(rect.x, rect.y, rect.w, rect.h);
  }
  ctx.restore();

  ctx.lineWidth = STROKE_WIDTH;
  if (scene.mode === "glyph") {
    ctx.strokeStyle = PALETTE.glyph;
    ctx.lineCap = "round";
    ctx.beginPath();
    for (const glyph of scene.glyphs) {
      for (const [x1, y1, x2, y2] of glyph.segments) {
        ctx.moveTo(x1, y1);
        ctx.lineTo(x2, y2);
      }
    }
    ctx.stroke();
  } else {
    ctx.strokeStyle = PALETTE.line;
    ctx.beginPath();
    for (const line of scene.lines) {
      ctx.moveTo(line.x1, line.y1);
      ctx.lineTo(line.x2, line.y2);
    }
    ctx.stroke();
  }
  ctx.restore();
}

export function glyphAt(scene: SceneJson, x: number, y: number): GlyphJson | null {
  for (const glyph of scene.glyphs) {
    const [gx, gy, gw, gh] = glyph.bbox;
    if (x >= gx && x <= gx + gw && y >= gy && y <= gy + gh) {
      return glyph;
    }
  }
  return null;
}

const HIT_DISTANCE_PX = 4;

export function lineAt(scene: SceneJson, x: number, y: number): LineJson | null {
  let best: LineJson | null = null;
  let bestDist = HIT_DISTANCE_PX;
  for (const line of scene.lines) {
    const d = pointToSegment(x, y, line.x1, line.y1, line.x2, line.y2);
    if (d < bestDist) {
      bestDist = d;
      best = line;
    }
  }
  return best;
}

function pointToSegment(
  px: number, py: number, x1: number, y1: number, x2: number, y2: number,
): number {
  const dx = x2 - x1;
  const dy = y2 - y1;
  const lengthSq = dx * dx + dy * dy;
  let t = lengthSq === 0 ? 0 : ((px - x1) * dx + (py - y1) * dy) / lengthSq;
  t = Math.max(0, Math.min(1, t));
  const cx = x1 + t * dx;
  const cy = y1 + t * dy;
  return Math.hypot(px - cx, py - cy);
}
