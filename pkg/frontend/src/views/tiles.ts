// Score tiles: graph exploit / impact / risk, two decimals, plus counts.

import { clear, el } from "../dom.js";
import type { AnalyticsPayload } from "../types.js";

export function renderScoreTiles(container: HTMLElement,
                                 analytics: AnalyticsPayload | null): void {
  clear(container);
  if (!analytics) {
    container.append(el("p", { class: "placeholder" }, ["no analytics yet"]));
    return;
  }
  const tiles: [string, string, string][] = [
    ["exploit", analytics.exploit_score.toFixed(2), "exploit-score"],
    ["impact", analytics.impact_score.toFixed(2), "impact-score"],
    ["risk", analytics.risk_score.toFixed(2), "risk-score"],
    ["paths", String(analytics.path_count), "path-count"],
    ["shortest", String(analytics.shortest_path_count), "shortest-count"],
    ["cover", String(analytics.vertex_cover_size), "cover-size"],
  ];
  for (const [label, value, role] of tiles) {
    container.append(el("div", { class: "tile", "data-role": role }, [
      el("span", { class: "tile-value" }, [value]),
      el("span", { class: "tile-label" }, [label]),
    ]));
  }
}
