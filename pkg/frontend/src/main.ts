// DOM wiring: canvas, wheel zoom about the cursor, drag panning, mode
// override, and tooltips fed by the round classifications from /api/meta.

import { drawScene, glyphAt, lineAt } from "./render.js";
import { SceneRequester } from "./scheduler.js";
import {
  ViewState,
  initialState,
  panRows,
  sceneQuery,
  visibleRows,
  withOverride,
  zoomRows,
} from "./state.js";
import { classificationDetail, classificationLabel, lineLabel } from "./tooltip.js";
import { Meta, ModeOverride, SceneJson } from "./types.js";

const ZOOM_IN_FACTOR = 0.8;
const ZOOM_OUT_FACTOR = 1.25;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id}`);
  }
  return el as T;
}

async function fetchJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const response = await fetch(url, { signal });
  if (!response.ok) {
    throw new Error(`${url}: HTTP ${response.status}`);
  }
  return (await response.json()) as T;
}

class Viewer {
  private state: ViewState;
  private scene: SceneJson | null = null;
  private readonly requester: SceneRequester;
  private readonly ctx: CanvasRenderingContext2D;
  private dragRow: number | null = null;

  constructor(
    private readonly meta: Meta,
    private readonly canvas: HTMLCanvasElement,
    private readonly status: HTMLElement,
    private readonly banner: HTMLElement,
    private readonly tooltip: HTMLElement,
  ) {
    const context = canvas.getContext("2d");
    if (!context) {
      throw new Error("canvas 2d context unavailable");
    }
    this.ctx = context;
    this.state = initialState(meta, canvas.width, canvas.height);
    this.requester = new SceneRequester(
      (query, signal) => fetchJson<SceneJson>(`/api/scene?${query}`, signal),
      (scene) => this.onScene(scene),
      (error) => this.onError(error),
    );
    this.requester.flush(sceneQuery(this.state));
  }

  private onScene(scene: SceneJson): void {
    this.scene = scene;
    this.banner.hidden = true;
    drawScene(this.ctx, scene);
    const rows = visibleRows(this.state);
    this.status.textContent =
      `mode ${scene.mode} · rows ${this.state.rowStart}:${this.state.rowEnd}` +
      ` (${rows} visible of ${this.meta.num_pes})`;
  }

  private onError(error: unknown): void {
    // Non-modal: show the message, keep the last good scene on screen.
    this.banner.textContent = String(error);
    this.banner.hidden = false;
  }

  private apply(next: ViewState): void {
    if (next === this.state) {
      return;
    }
    this.state = next;
    this.requester.request(sceneQuery(next));
  }

  setOverride(mode: ModeOverride): void {
    this.state = withOverride(this.state, mode);
    this.requester.flush(sceneQuery(this.state));
  }

  wheel(event: WheelEvent): void {
    event.preventDefault();
    const anchor = event.offsetY / this.canvas.clientHeight;
    const factor = event.deltaY < 0 ? ZOOM_IN_FACTOR : ZOOM_OUT_FACTOR;
    this.apply(zoomRows(this.state, factor, anchor, this.meta.num_pes));
  }

  dragStart(event: MouseEvent): void {
    this.dragRow = event.offsetY;
  }

  dragMove(event: MouseEvent): void {
    if (this.dragRow === null) {
      this.hover(event);
      return;
    }
    const rowsPerPx = visibleRows(this.state) / this.canvas.clientHeight;
    const delta = (this.dragRow - event.offsetY) * rowsPerPx;
    if (Math.abs(delta) >= 1) {
      this.dragRow = event.offsetY;
      this.apply(panRows(this.state, Math.round(delta), this.meta.num_pes));
    }
  }

  dragEnd(): void {
    this.dragRow = null;
  }

  private hover(event: MouseEvent): void {
    if (!this.scene) {
      return;
    }
    const x = event.offsetX;
    const y = event.offsetY;
    let text: string | null = null;
    if (this.scene.mode === "glyph") {
      const glyph = glyphAt(this.scene, x, y);
      if (glyph) {
        const round = this.meta.rounds.find((r) => r.send_level === glyph.send_level);
        if (round) {
          text =
            classificationLabel(round.classification) +
            "\n" +
            classificationDetail(round.classification);
        }
      }
    } else {
      const line = lineAt(this.scene, x, y);
      if (line) {
        text = lineLabel(line);
      }
    }
    if (text === null) {
      this.tooltip.hidden = true;
    } else {
      this.tooltip.textContent = text;
      this.tooltip.style.left = `${event.pageX + 12}px`;
      this.tooltip.style.top = `${event.pageY + 12}px`;
      this.tooltip.hidden = false;
    }
  }
}

async function start(): Promise<void> {
  const canvas = byId<HTMLCanvasElement>("chart");
  const meta = await fetchJson<Meta>("/api/meta");
  const viewer = new Viewer(
    meta,
    canvas,
    byId("status"),
    byId("banner"),
    byId("tooltip"),
  );
  canvas.addEventListener("wheel", (e) => viewer.wheel(e), { passive: false });
  canvas.addEventListener("mousedown", (e) => viewer.dragStart(e));
  canvas.addEventListener("mousemove", (e) => viewer.dragMove(e));
  window.addEventListener("mouseup", () => viewer.dragEnd());
  const select = byId<HTMLSelectElement>("mode");
  select.addEventListener("change", () => {
    viewer.setOverride(select.value as ModeOverride);
  });
}

start().catch((error) => {
  const banner = document.getElementById("banner");
  if (banner) {
    banner.textContent = String(error);
    banner.hidden = false;
  }
});
