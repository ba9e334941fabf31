// Navigation state: which rows and logical steps are requested from the
// scene service. Pure functions so zoom/pan behavior is testable headless.

import { Meta, ModeOverride } from "./types.js";

export interface ViewState {
  rowStart: number; // inclusive
  rowEnd: number; // exclusive
  levelStart: number;
  levelEnd: number;
  width: number;
  height: number;
  override: ModeOverride;
}

export const MIN_SPAN = 2;

export function initialState(meta: Meta, width: number, height: number): ViewState {
  return {
    rowStart: 0,
    rowEnd: meta.num_pes,
    levelStart: 0,
    levelEnd: meta.max_level + 1,
    width,
    height,
    override: "auto",
  };
}

export function visibleRows(state: ViewState): number {
  return state.rowEnd - state.rowStart;
}

function clampWindow(start: number, span: number, total: number): [number, number] {
  const size = Math.min(Math.max(span, MIN_SPAN), total);
  let lo = Math.round(start);
  if (lo < 0) lo = 0;
  if (lo + size > total) lo = total - size;
  return [lo, lo + size];
}

/**
 * Zoom the row window by `factor` (< 1 zooms in), keeping the row under
 * `anchor` (0..1, fraction of the viewport height) fixed on screen.
 */
export function zoomRows(state: ViewState, factor: number, anchor: number, numPes: number): ViewState {
  const span = visibleRows(state);
  const target = Math.max(MIN_SPAN, Math.round(span * factor));
  const anchorRow = state.rowStart + anchor * span;
  const [rowStart, rowEnd] = clampWindow(anchorRow - anchor * target, target, numPes);
  if (rowStart === state.rowStart && rowEnd === state.rowEnd) {
    return state;
  }
  return { ...state, rowStart, rowEnd };
}

export function panRows(state: ViewState, deltaRows: number, numPes: number): ViewState {
  const span = visibleRows(state);
  const [rowStart, rowEnd] = clampWindow(state.rowStart + deltaRows, span, numPes);
  if (rowStart === state.rowStart) {
    return state;
  }
  return { ...state, rowStart, rowEnd };
}

export function withOverride(state: ViewState, override: ModeOverride): ViewState {
  return { ...state, override };
}

/** Query string for /api/scene; full mode covers all rows by contract. */
export function sceneQuery(state: ViewState): string {
  const parts: string[] = [];
  if (state.override !== "full") {
    parts.push(`rows=${state.rowStart}:${state.rowEnd}`);
  }
  parts.push(`levels=${state.levelStart}:${state.levelEnd}`);
  parts.push(`w=${state.width}`);
  parts.push(`h=${state.height}`);
  if (state.override !== "auto") {
    parts.push(`mode=${state.override}`);
  }
  return parts.join("&");
}
