// Top attack paths, sortable by risk / exploit / impact.
//
// Sorting is the server's job (GET /paths?sort=...); a header click just
// asks the app to re-fetch, and whatever order comes back is rendered.

import { clear, el } from "../dom.js";
import type { PathsResponse, SortKey } from "../types.js";

const COLUMNS: [SortKey, string][] = [
  ["risk", "risk"],
  ["exploit", "exploit"],
  ["impact", "impact"],
];

export function renderPathsTable(
  container: HTMLElement,
  paths: PathsResponse | null,
  activeSort: SortKey,
  onSort: (key: SortKey) => void,
): void {
  clear(container);
  if (!paths) {
    container.append(el("p", { class: "placeholder" }, ["no paths loaded"]));
    return;
  }
  const head = el("tr", {}, [el("th", {}, ["path"])]);
  for (const [key, label] of COLUMNS) {
    const button = el("button", {
      class: key === activeSort ? "sort active" : "sort",
      "data-sort": key,
      type: "button",
    }, [key === activeSort ? `${label} ▼` : label]);
    button.addEventListener("click", () => onSort(key));
    head.append(el("th", {}, [button]));
  }

  const body = el("tbody", { "data-role": "path-rows" });
  for (const path of paths.paths) {
    body.append(el("tr", { class: "path-row" }, [
      el("td", { class: "route" }, [path.nodes.join(" → ")]),
      el("td", {}, [path.risk_sum.toFixed(4)]),
      el("td", {}, [path.exploit_sum.toFixed(4)]),
      el("td", {}, [path.impact_sum.toFixed(4)]),
    ]));
  }
  if (paths.paths.length === 0) {
    body.append(el("tr", {}, [
      el("td", { colspan: "4", class: "placeholder" }, ["no paths within cutoff"]),
    ]));
  }
  container.append(el("table", { class: "paths" }, [el("thead", {}, [head]), body]));
}
