// Dashboard orchestration: fetch, state, rendering, edit workflow.

import { ApiClient, ApiError, ConflictError } from "./api.js";
import { clear, el } from "./dom.js";
import { Store } from "./state.js";
import type { GraphEdit, LayerSelection, SortKey } from "./types.js";
import { LAYERS } from "./types.js";
import { validateEdit } from "./validation.js";
import { renderConflictDialog } from "./views/conflictDialog.js";
import { renderEditPanel } from "./views/editPanel.js";
import { renderGraphView, renderNodePanel } from "./views/graphView.js";
import { renderImpactPanel } from "./views/impactPanel.js";
import { renderPathsTable } from "./views/pathsTable.js";
import { renderSpiderChart } from "./views/spider.js";
import { renderScoreTiles } from "./views/tiles.js";

const PATH_LIMIT = 25;

export interface Mounts {
  header: HTMLElement;
  tiles: HTMLElement;
  spider: HTMLElement;
  paths: HTMLElement;
  graph: HTMLElement;
  nodePanel: HTMLElement;
  editPanel: HTMLElement;
  impact: HTMLElement;
  conflict: HTMLElement;
  toast: HTMLElement;
}

export class Dashboard {
  readonly store = new Store();

  constructor(private readonly api: ApiClient, private readonly mounts: Mounts) {
    this.store.subscribe(() => this.render());
  }

  // --- data loading --------------------------------------------------------

  async load(graphId: string, version?: number): Promise<void> {
    try {
      const cumulative = await this.api.getGraph(graphId, { version });
      const layer = this.store.get().layer;
      const graph = layer === "Cumulative"
        ? cumulative
        : await this.api.getGraph(graphId, { version, layer });
      const analytics = await this.api.getAnalytics(graphId, version)
        .catch((error) => {
          if (error instanceof ApiError && error.status === 404) return null;
          throw error;
        });
      const sortKey = this.store.get().sortKey;
      const paths = await this.api.getPaths(graphId, sortKey, PATH_LIMIT);
      this.store.update({
        graphId,
        displayedVersion: cumulative.version,
        cumulativeGraph: cumulative,
        graph,
        analytics,
        paths,
        toast: null,
      });
    } catch (error) {
      if (error instanceof ApiError) {
        this.store.update({ toast: `${error.status}: ${error.problem.message}` });
        return;
      }
      throw error;
    }
  }

  async selectLayer(layer: LayerSelection): Promise<void> {
    this.store.update({ layer, selectedNode: null, selectedEdge: null });
    const { graphId } = this.store.get();
    if (graphId) await this.load(graphId);
  }

  async selectSort(sortKey: SortKey): Promise<void> {
    const { graphId } = this.store.get();
    this.store.update({ sortKey });
    if (!graphId) return;
    const paths = await this.api.getPaths(graphId, sortKey, PATH_LIMIT);
    this.store.update({ paths });
  }

  // --- edit workflow ------------------------------------------------------

  queueEdit(edit: GraphEdit): void {
    const graph = this.store.get().cumulativeGraph;
    if (!graph) return;
    const problem = validateEdit(graph, edit);
    if (problem) {
      this.store.update({ editError: problem });
      return;
    }
    this.store.update({
      pendingEdits: [...this.store.get().pendingEdits, edit],
      editError: null,
    });
  }

  dropEdit(index: number): void {
    const pending = [...this.store.get().pendingEdits];
    pending.splice(index, 1);
    this.store.update({ pendingEdits: pending });
  }

  async applyEdits(): Promise<void> {
    const { graphId, displayedVersion, pendingEdits } = this.store.get();
    if (!graphId || displayedVersion == null || pendingEdits.length === 0) return;
    try {
      const report = await this.api.patchGraph(graphId, displayedVersion, pendingEdits);
      this.store.update({
        lastReport: report,
        pendingEdits: [],
        editError: null,
        conflict: null,
        selectedNode: null,
        selectedEdge: null,
      });
      await this.load(graphId, report.to_version);
    } catch (error) {
      if (error instanceof ConflictError) {
        this.store.update({
          conflict: {
            message: error.problem.message,
            currentVersion: error.currentVersion,
          },
        });
        return;
      }
      if (error instanceof ApiError) {
        this.store.update({ editError: error.problem.message });
        return;
      }
      throw error;
    }
  }

  async reloadAndRetry(): Promise<void> {
    const { graphId } = this.store.get();
    if (!graphId) return;
    this.store.update({ conflict: null });
    await this.load(graphId); // refreshes displayedVersion to latest
    await this.applyEdits();  // resends pending edits against it
  }

  discardConflict(): void {
    this.store.update({ conflict: null, pendingEdits: [] });
  }

  // --- rendering -----------------------------------------------------------

  private renderHeader(): void {
    const state = this.store.get();
    const header = this.mounts.header;
    clear(header);

    header.append(el("span", { class: "brand" }, ["postural"]));
    header.append(el("span", { class: "graph-id", "data-role": "graph-id" }, [
      state.graphId
        ? `${state.graphId} v${state.displayedVersion ?? "?"}`
        : "no graph loaded",
    ]));

    const select = el("select", { "data-role": "layer-select" });
    for (const layer of ["Cumulative", ...LAYERS]) {
      const option = el("option", { value: layer }, [layer]);
      if (layer === state.layer) option.setAttribute("selected", "selected");
      select.append(option);
    }
    select.addEventListener("change", () => {
      void this.selectLayer(select.value as LayerSelection);
    });
    header.append(el("label", { class: "field" }, ["layer ", select]));

    const version = el("input", {
      type: "number", min: "1", size: "4", "data-role": "version-input",
      value: String(state.displayedVersion ?? ""),
    });
    const loadVersion = el("button", { type: "button", "data-role": "load-version" },
                           ["load version"]);
    loadVersion.addEventListener("click", () => {
      const { graphId } = this.store.get();
      if (graphId && version.value) void this.load(graphId, Number(version.value));
    });
    header.append(el("span", { class: "field" }, [version, loadVersion]));
  }

  render(): void {
    const state = this.store.get();
    this.renderHeader();
    renderScoreTiles(this.mounts.tiles, state.analytics);
    renderSpiderChart(this.mounts.spider, state.analytics, state.cumulativeGraph);
    renderPathsTable(this.mounts.paths, state.paths, state.sortKey,
                     (key) => void this.selectSort(key));
    renderGraphView(this.mounts.graph, state.graph, state.selectedNode,
                    state.selectedEdge, {
      onSelectNode: (id) => this.store.update({ selectedNode: id, selectedEdge: null }),
      onSelectEdge: (src, dst) =>
        this.store.update({ selectedEdge: [src, dst], selectedNode: null }),
    });
    renderNodePanel(this.mounts.nodePanel, state.graph, state.selectedNode);
    renderEditPanel(this.mounts.editPanel, state, state.editError, {
      onQueueEdit: (edit) => this.queueEdit(edit),
      onDropEdit: (index) => this.dropEdit(index),
      onApply: () => void this.applyEdits(),
    });
    renderImpactPanel(this.mounts.impact, state.lastReport);
    renderConflictDialog(this.mounts.conflict, state.conflict, {
      onReloadAndRetry: () => void this.reloadAndRetry(),
      onDiscard: () => this.discardConflict(),
    });

    clear(this.mounts.toast);
    if (state.toast) {
      this.mounts.toast.append(
        el("div", { class: "toast", "data-role": "toast" }, [state.toast]),
      );
    }
  }
}
