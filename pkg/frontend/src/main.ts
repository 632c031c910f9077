// Browser entry point.  Configuration comes from the query string:
//   ?api=http://127.0.0.1:8460&graph=<graph_id>

import { ApiClient } from "./api.js";
import { Dashboard, type Mounts } from "./app.js";

function mount(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing mount point #${id}`);
  return node;
}

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8460");
const mounts: Mounts = {
  header: mount("header"),
  tiles: mount("tiles"),
  spider: mount("spider"),
  paths: mount("paths"),
  graph: mount("graph"),
  nodePanel: mount("node-panel"),
  editPanel: mount("edit-panel"),
  impact: mount("impact"),
  conflict: mount("conflict"),
  toast: mount("toast"),
};

const dashboard = new Dashboard(api, mounts);
dashboard.render();

const graphId = params.get("graph");
if (graphId) {
  void dashboard.load(graphId);
} else {
  mounts.toast.textContent = "append ?graph=<graph_id> to the URL to load a graph";
}
