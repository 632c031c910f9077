// What-if edit composer: queue edits locally, validate inline, send one
// PATCH batch carrying the displayed version in If-Match.

import { clear, el } from "../dom.js";
import { describeEdit } from "../validation.js";
import type { GraphEdit } from "../types.js";

export interface ViewStateLike {
  selectedNode: string | null;
  selectedEdge: [string, string] | null;
  pendingEdits: GraphEdit[];
  displayedVersion: number | null;
}

export interface EditPanelHandlers {
  onQueueEdit: (edit: GraphEdit) => void;
  onDropEdit: (index: number) => void;
  onApply: () => void;
}

function numberOrNull(value: string): number | null {
  const trimmed = value.trim();
  if (!trimmed) return null;
  return Number(trimmed);
}

function field(labelText: string, input: HTMLElement): HTMLElement {
  return el("label", { class: "field" }, [labelText, input]);
}

export function renderEditPanel(container: HTMLElement, state: ViewStateLike,
                                error: string | null,
                                handlers: EditPanelHandlers): void {
  clear(container);
  container.append(el("h3", {}, ["what-if edits"]));

  // --- score override on the selected node
  const eScore = el("input", { type: "text", placeholder: "exploit 0-10", size: "9" });
  const iScore = el("input", { type: "text", placeholder: "impact 0-10", size: "9" });
  const setScores = el("button", { type: "button", "data-role": "queue-set-score" },
                       ["set scores"]);
  setScores.addEventListener("click", () => {
    if (!state.selectedNode) return;
    handlers.onQueueEdit({
      op: "set_score",
      node_id: state.selectedNode,
      e_score: numberOrNull(eScore.value),
      i_score: numberOrNull(iScore.value),
    });
  });
  const removeNode = el("button", { type: "button", "data-role": "queue-remove-node" },
                        ["remove node"]);
  removeNode.addEventListener("click", () => {
    if (!state.selectedNode) return;
    handlers.onQueueEdit({ op: "remove_node", node_id: state.selectedNode });
  });
  container.append(el("div", { class: "edit-row" }, [
    el("span", { class: "target" },
       [state.selectedNode ? `node ${state.selectedNode}` : "no node selected"]),
    field("e", eScore), field("i", iScore), setScores, removeNode,
  ]));

  // --- edge tools
  const src = el("input", { type: "text", placeholder: "src id", size: "14",
                            "data-role": "edge-src" });
  const dst = el("input", { type: "text", placeholder: "dst id", size: "14",
                            "data-role": "edge-dst" });
  const weight = el("input", { type: "text", placeholder: "weight", size: "6",
                               value: "0.8", "data-role": "edge-weight" });
  const addEdge = el("button", { type: "button", "data-role": "queue-add-edge" },
                     ["add edge"]);
  addEdge.addEventListener("click", () => {
    handlers.onQueueEdit({
      op: "add_edge", src: src.value.trim(), dst: dst.value.trim(),
      weight: Number(weight.value),
    });
  });
  const removeEdge = el("button", { type: "button", "data-role": "queue-remove-edge" },
                        ["remove selected edge"]);
  removeEdge.addEventListener("click", () => {
    if (!state.selectedEdge) return;
    handlers.onQueueEdit({
      op: "remove_edge", src: state.selectedEdge[0], dst: state.selectedEdge[1],
    });
  });
  container.append(el("div", { class: "edit-row" }, [
    field("src", src), field("dst", dst), field("w", weight), addEdge, removeEdge,
  ]));

  if (error) {
    container.append(el("p", { class: "edit-error", "data-role": "edit-error" }, [error]));
  }

  // --- pending batch
  const list = el("ul", { class: "pending", "data-role": "pending-edits" });
  state.pendingEdits.forEach((edit, index) => {
    const drop = el("button", { type: "button", class: "drop" }, ["✕"]);
    drop.addEventListener("click", () => handlers.onDropEdit(index));
    list.append(el("li", {}, [describeEdit(edit), drop]));
  });
  container.append(list);

  const apply = el("button", {
    type: "button", class: "apply", "data-role": "apply-edits",
    ...(state.pendingEdits.length === 0 ? { disabled: "disabled" } : {}),
  }, [`apply ${state.pendingEdits.length} edit(s) to v${state.displayedVersion ?? "?"}`]);
  apply.addEventListener("click", handlers.onApply);
  container.append(apply);
}
