// Inline rendering of the change-impact report returned by a PATCH.

import { clear, el } from "../dom.js";
import type { ChangeImpactReport } from "../types.js";

function signed(value: number): string {
  const text = value.toFixed(2);
  return value > 0 ? `+${text}` : text;
}

export function renderImpactPanel(container: HTMLElement,
                                  report: ChangeImpactReport | null): void {
  clear(container);
  if (!report) {
    container.append(el("p", { class: "placeholder" }, ["no change applied yet"]));
    return;
  }
  container.append(el("h3", {}, [
    `change impact: v${report.from_version} → v${report.to_version}`,
  ]));
  const deltas = el("ul", { class: "deltas", "data-role": "impact-deltas" }, [
    el("li", {}, [`exploit ${signed(report.deltas.exploit)}`]),
    el("li", {}, [`impact ${signed(report.deltas.impact)}`]),
    el("li", {}, [`risk ${signed(report.deltas.risk)}`]),
    el("li", {}, [`paths +${report.added_paths} / -${report.removed_paths}`]),
  ]);
  container.append(deltas);

  const badges = el("div", { class: "badges" });
  if (report.vertex_cover_changed) {
    badges.append(el("span", { class: "badge", "data-role": "cover-changed-badge" },
                     ["vertex cover changed"]));
  }
  if (report.key_vulnerabilities_changed) {
    badges.append(el("span", { class: "badge", "data-role": "keyvulns-changed-badge" },
                     ["key vulnerabilities changed"]));
  }
  container.append(badges);

  if (report.vertex_cover_changed) {
    container.append(el("p", { class: "cover-diff" }, [
      `cover now: ${report.vertex_cover.after.join(", ") || "(empty)"}`,
    ]));
  }
}
