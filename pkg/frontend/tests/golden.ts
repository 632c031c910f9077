// Loads the engine's committed golden documents so the dashboard tests
// run against the exact payloads the backend produces.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { AnalyticsPayload, GraphPayload } from "../src/types.js";

const GOLDEN_DIR = join(
  dirname(fileURLToPath(import.meta.url)),
  "..", "..", "tests", "fixtures", "golden",
);

/** Strip the PSTD container (magic line + sha256 trailer) and parse. */
function unwrap<T>(name: string): T {
  const raw = readFileSync(join(GOLDEN_DIR, name), "utf-8");
  const newline = raw.indexOf("\n");
  if (!raw.startsWith("PSTD ") || newline < 0) {
    throw new Error(`${name}: not a PSTD container`);
  }
  const trailer = raw.lastIndexOf("#sha256=");
  if (trailer < 0) throw new Error(`${name}: missing checksum trailer`);
  return JSON.parse(raw.slice(newline + 1, trailer)) as T;
}

export function goldenGraph(): GraphPayload {
  return unwrap<GraphPayload>("cumulative.graph");
}

export function goldenAnalytics(): AnalyticsPayload {
  return unwrap<AnalyticsPayload>("cumulative.analytics");
}

export function goldenLayerGraph(stem: string): GraphPayload {
  return unwrap<GraphPayload>(`${stem}.graph`);
}
