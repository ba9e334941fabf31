// Tooltip text, built from the service's classification and edge data.

import { Classification, LineJson } from "./types.js";

export function classificationLabel(cls: Classification): string {
  if (cls.family === "unknown") {
    return "Unknown pattern";
  }
  const family = cls.family.charAt(0).toUpperCase() + cls.family.slice(1);
  if (cls.grouping === "continuous") {
    return `${family}, stride ${cls.stride}, continuous`;
  }
  const groups = cls.num_pes / cls.grouping.group_size;
  return `${family}, stride ${cls.stride}, grouped ×${groups}`;
}

export function classificationDetail(cls: Classification): string {
  if (cls.family === "unknown") {
    return cls.reason;
  }
  const group =
    cls.grouping === "continuous"
      ? "one block"
      : `group size ${cls.grouping.group_size}`;
  return `${group} · ${cls.num_pes} PEs`;
}

export function lineLabel(line: LineJson): string {
  return `PE ${line.src} → PE ${line.dst}`;
}
