/** Assembles the three-panel dashboard around one shared selection. */

import { ApiClient } from "./api.js";
import { CopilotPanel } from "./copilot.js";
import { DossierPanel } from "./dossier.js";
import type { NetworkPanelOptions } from "./network.js";
import { SearchPanel, type SearchPanelOptions } from "./search.js";
import { SelectionStore } from "./store.js";

export interface DashboardOptions {
  search?: SearchPanelOptions;
  network?: NetworkPanelOptions;
}

export interface Dashboard {
  store: SelectionStore;
  search: SearchPanel;
  dossier: DossierPanel;
  copilot: CopilotPanel;
}

export function createDashboard(
  root: HTMLElement,
  api: ApiClient,
  options: DashboardOptions = {},
): Dashboard {
  const store = new SelectionStore();
  const search = new SearchPanel(api, store, options.search);
  const dossier = new DossierPanel(api, store, options.network);
  const copilot = new CopilotPanel(api, store);

  const shell = document.createElement("div");
  shell.className = "dashboard";
  const left = document.createElement("aside");
  left.className = "panel panel-left";
  left.append(search.element);
  const center = document.createElement("main");
  center.className = "panel panel-center";
  center.append(dossier.element);
  const right = document.createElement("aside");
  right.className = "panel panel-right";
  right.append(copilot.element);
  shell.append(left, center, right);
  root.append(shell);

  return { store, search, dossier, copilot };
}
