// Wire types for the v1 document schemas served by the engine.

export type NodeKind = "Attacker" | "Cve" | "Cwe";
export type EdgeKindName = "AttackerToCve" | "CveToCve" | "CveToCwe";
export type LayerName = "Network" | "SystemHardware" | "MachineLearning" | "Crypto";
export type LayerSelection = LayerName | "Cumulative";

export const LAYERS: LayerName[] = [
  "Network", "SystemHardware", "MachineLearning", "Crypto",
];

export interface NodeAttributes {
  preconditions: string[];
  postconditions: string[];
  inputs: string[];
  outputs: string[];
  fallback_ports: string[];
}

export interface GraphNodePayload {
  id: string;
  kind: NodeKind;
  e_score: number;
  i_score: number;
  layers: LayerName[];
  overridden: string[];
  attributes: NodeAttributes | null;
}

export interface GraphEdgePayload {
  src: string;
  dst: string;
  kind: EdgeKindName;
  weight: number;
  provenance: Record<string, unknown>;
}

export interface GraphPayload {
  schema: "attack-graph-v1";
  graph_id: string;
  version: number;
  threshold: number;
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
  cycle_removals: [string, string, number][];
}

export interface PathPayload {
  nodes: string[];
  exploit_sum: number;
  impact_sum: number;
  risk_sum: number;
}

export interface EdgeScoreRow {
  src: string;
  dst: string;
  exploitability: number;
  impact: number;
  risk: number;
  normalized_exploitability: number;
  normalized_impact: number;
  normalized_risk: number;
}

export interface AnalyticsPayload {
  schema: "analytics-v1";
  graph_id: string;
  graph_version: number;
  constants: {
    upstream_factor: number;
    downstream_factor: number;
    path_cutoff: number;
    top_n: number;
  };
  exploit_score: number;
  impact_score: number;
  risk_score: number;
  total_nodes: number;
  total_edges: number;
  path_count: number;
  shortest_path_count: number;
  vertex_cover_size: number;
  shortest_paths: PathPayload[];
  top_paths: PathPayload[];
  key_vulnerabilities: [string, number][];
  vertex_cover: string[];
  edge_scores: EdgeScoreRow[];
}

export type SortKey = "risk" | "exploit" | "impact";

export interface PathsResponse {
  graph_id: string;
  version: number;
  sort: SortKey[];
  paths: PathPayload[];
}

export interface ProblemDocument {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

// Edit wire forms accepted by PATCH /v1/graphs/{id}.
export interface CveRecordPayload {
  id: string;
  description: string;
  cwe_ids: number[];
  base_score: number | null;
  exploitability_score: number | null;
  impact_score: number | null;
  products: [string, string, string][];
  published: string | null;
}

export type GraphEdit =
  | { op: "add_cve_node"; record: CveRecordPayload; attributes: NodeAttributes }
  | { op: "remove_node"; node_id: string }
  | { op: "add_edge"; src: string; dst: string; weight: number }
  | { op: "remove_edge"; src: string; dst: string }
  | { op: "set_score"; node_id: string; e_score?: number | null; i_score?: number | null }
  | { op: "set_weight"; src: string; dst: string; weight: number };

export interface ChangeImpactReport {
  graph_id: string;
  from_version: number;
  to_version: number;
  deltas: { exploit: number; impact: number; risk: number };
  added_paths: number;
  removed_paths: number;
  key_vulnerabilities_changed: boolean;
  key_vulnerabilities: { before: [string, number][]; after: [string, number][] };
  vertex_cover_changed: boolean;
  vertex_cover: { before: string[]; after: string[] };
}
