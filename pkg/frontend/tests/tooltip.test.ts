import { describe, expect, it } from "vitest";

import { classificationDetail, classificationLabel, lineLabel } from "../src/tooltip.js";
import { Classification } from "../src/types.js";

describe("classificationLabel", () => {
  it("matches the served grouped-ring classification", () => {
    // Exactly what /api/meta serves for a stride-3 ring over 1280 PEs in
    // groups of 8: 160 repetitions.
    const served: Classification = {
      family: "ring",
      stride: 3,
      grouping: { group_size: 8 },
      num_pes: 1280,
      exact: true,
    };
    expect(classificationLabel(served)).toBe("Ring, stride 3, grouped ×160");
    expect(classificationDetail(served)).toBe("group size 8 · 1280 PEs");
  });

  it("renders continuous patterns without a group count", () => {
    const served: Classification = {
      family: "offset",
      stride: 4,
      grouping: "continuous",
      num_pes: 2560,
      exact: true,
    };
    expect(classificationLabel(served)).toBe("Offset, stride 4, continuous");
    expect(classificationDetail(served)).toBe("one block · 2560 PEs");
  });

  it("keeps unknown rounds honest", () => {
    const served: Classification = { family: "unknown", reason: "3 distinct deltas" };
    expect(classificationLabel(served)).toBe("Unknown pattern");
    expect(classificationDetail(served)).toBe("3 distinct deltas");
  });
});

describe("lineLabel", () => {
  it("shows the edge endpoints", () => {
    expect(lineLabel({ x1: 0, y1: 0, x2: 1, y2: 1, src: 12, dst: 15 })).toBe(
      "PE 12 → PE 15",
    );
  });
});
