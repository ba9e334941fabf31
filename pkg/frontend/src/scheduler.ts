// Debounced, single-in-flight scene fetching: every navigation change asks
// for one scene, rapid changes collapse into the latest, and a newer request
// cancels an older one still on the wire.

import { SceneJson } from "./types.js";

export type SceneFetcher = (query: string, signal: AbortSignal) => Promise<SceneJson>;

export const DEBOUNCE_MS = 120; // >= 100 ms between navigation and fetch

export class SceneRequester {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private ticket = 0;

  constructor(
    private readonly fetcher: SceneFetcher,
    private readonly onScene: (scene: SceneJson) => void,
    private readonly onError: (error: unknown) => void,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  request(query: string): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(query);
    }, this.debounceMs);
  }

  /** Resolve the pending debounce immediately (initial load). */
  flush(query: string): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    void this.fire(query);
  }

  private async fire(query: string): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const ticket = ++this.ticket;
    try {
      const scene = await this.fetcher(query, controller.signal);
      if (ticket === this.ticket) {
        this.onScene(scene);
      }
    } catch (error) {
      if (ticket === this.ticket && !controller.signal.aborted) {
        this.onError(error);
      }
    }
  }
}
