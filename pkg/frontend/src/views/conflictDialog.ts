// 409 handling: someone moved the graph while edits were pending.

import { clear, el } from "../dom.js";

export interface ConflictHandlers {
  onReloadAndRetry: () => void;
  onDiscard: () => void;
}

export function renderConflictDialog(
  container: HTMLElement,
  conflict: { message: string; currentVersion: number | null } | null,
  handlers: ConflictHandlers,
): void {
  clear(container);
  if (!conflict) {
    container.classList.remove("open");
    return;
  }
  container.classList.add("open");
  const retry = el("button", { type: "button", "data-role": "conflict-retry" },
                   ["reload and retry"]);
  retry.addEventListener("click", handlers.onReloadAndRetry);
  const discard = el("button", { type: "button", "data-role": "conflict-discard" },
                     ["discard my edits"]);
  discard.addEventListener("click", handlers.onDiscard);
  container.append(el("div", { class: "dialog", "data-role": "conflict-dialog" }, [
    el("h3", {}, ["version conflict"]),
    el("p", {}, [conflict.message]),
    el("p", {}, [conflict.currentVersion != null
      ? `the graph is now at version ${conflict.currentVersion}`
      : "the graph moved to a newer version"]),
    el("div", { class: "dialog-actions" }, [retry, discard]),
  ]));
}
