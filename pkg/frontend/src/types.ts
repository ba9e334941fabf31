// Wire types for /api/meta and /api/scene. The viewer draws these verbatim;
// all geometry is computed server-side.

export interface GroupedGrouping {
  group_size: number;
}

export type Grouping = "continuous" | GroupedGrouping;

export interface KnownClassification {
  family: "offset" | "ring" | "exchange";
  stride: number;
  grouping: Grouping;
  num_pes: number;
  exact: boolean;
}

export interface UnknownClassification {
  family: "unknown";
  reason: string;
}

export type Classification = KnownClassification | UnknownClassification;

export interface RoundMeta {
  send_level: number;
  classification: Classification;
}

export interface Meta {
  num_pes: number;
  max_level: number;
  rounds: RoundMeta[];
}

export interface ViewportJson {
  width_px: number;
  height_px: number;
  time_window: [number, number];
  row_window: [number, number] | null;
}

export interface RectJson {
  x: number;
  y: number;
  w: number;
  h: number;
  label: string;
}

export interface LineJson {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  src: number;
  dst: number;
}

export type Segment = [number, number, number, number];

export interface GlyphJson {
  kind: "offset" | "ring" | "exchange";
  bbox: [number, number, number, number];
  angle_deg: number;
  partitions: number;
  send_level: number;
  segments: Segment[];
  protrusions?: number;
  cross_lines?: number;
  degenerate?: boolean;
}

export type SceneMode = "full" | "partial" | "glyph";

export interface SceneJson {
  mode: SceneMode;
  viewport: ViewportJson;
  rects: RectJson[];
  lines: LineJson[];
  glyphs: GlyphJson[];
  blur_background: boolean;
}

export type ModeOverride = "auto" | SceneMode;
