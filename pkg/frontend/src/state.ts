// Single view-state store; every mutation funnels through update().

import type {
  AnalyticsPayload,
  ChangeImpactReport,
  GraphEdit,
  GraphPayload,
  LayerSelection,
  PathsResponse,
  SortKey,
} from "./types.js";

export interface ViewState {
  graphId: string | null;
  /** Version on screen; PATCH always carries this in If-Match. */
  displayedVersion: number | null;
  layer: LayerSelection;
  graph: GraphPayload | null;          // currently displayed (maybe a partition)
  cumulativeGraph: GraphPayload | null; // edits validate against this one
  analytics: AnalyticsPayload | null;
  paths: PathsResponse | null;
  sortKey: SortKey;
  selectedNode: string | null;
  selectedEdge: [string, string] | null;
  pendingEdits: GraphEdit[];
  editError: string | null;
  lastReport: ChangeImpactReport | null;
  conflict: { message: string; currentVersion: number | null } | null;
  toast: string | null;
}

export function initialState(): ViewState {
  return {
    graphId: null,
    displayedVersion: null,
    layer: "Cumulative",
    graph: null,
    cumulativeGraph: null,
    analytics: null,
    paths: null,
    sortKey: "risk",
    selectedNode: null,
    selectedEdge: null,
    pendingEdits: [],
    editError: null,
    lastReport: null,
    conflict: null,
    toast: null,
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState = initialState();
  private listeners: Listener[] = [];

  get(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  update(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) listener(this.state);
  }
}
