/** Left panel: live entity search with tags and locations. */

import type { ApiClient } from "./api.js";
import type { SelectionStore } from "./store.js";
import type { Candidate } from "./types.js";

export interface SearchPanelOptions {
  /** debounce for keystrokes; tests set 0 */
  debounceMs?: number;
  limit?: number;
}

export class SearchPanel {
  readonly element: HTMLElement;
  readonly input: HTMLInputElement;
  private readonly list: HTMLElement;
  private readonly errorBox: HTMLElement;
  private readonly debounceMs: number;
  private readonly limit: number;

  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private sequence = 0;
  private lastQuery = "";
  /** requests issued, for tests and diagnostics */
  requestCount = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly store: SelectionStore,
    options: SearchPanelOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.limit = options.limit ?? 10;

    this.element = document.createElement("div");
    this.element.className = "search-panel";
    this.input = document.createElement("input");
    this.input.type = "search";
    this.input.placeholder = "Search companies and people";
    this.input.addEventListener("input", () => this.onType(this.input.value));
    this.list = document.createElement("ul");
    this.list.className = "search-results";
    this.errorBox = document.createElement("div");
    this.errorBox.className = "search-error";
    this.errorBox.hidden = true;
    this.element.append(this.input, this.errorBox, this.list);
  }

  private onType(raw: string): void {
    if (this.timer) clearTimeout(this.timer);
    const query = raw.trim();
    if (!query) {
      // blank input never hits the server
      this.cancelInFlight();
      this.lastQuery = "";
      this.renderRows([]);
      this.hideError();
      return;
    }
    this.timer = setTimeout(() => this.runSearch(query), this.debounceMs);
  }

  private cancelInFlight(): void {
    this.controller?.abort();
    this.controller = null;
  }

  private async runSearch(query: string): Promise<void> {
    this.cancelInFlight();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.sequence;
    this.lastQuery = query;
    this.requestCount++;
    try {
      const response = await this.api.search(query, this.limit, controller.signal);
      if (ticket !== this.sequence) return; // a newer query superseded this one
      this.hideError();
      this.renderRows(response.candidates);
    } catch (error) {
      if (controller.signal.aborted || ticket !== this.sequence) return;
      this.showError(query, error);
    }
  }

  private renderRows(candidates: Candidate[]): void {
    this.list.textContent = "";
    for (const candidate of candidates) {
      const row = document.createElement("li");
      row.className = "search-row";
      row.dataset.uid = candidate.uid;

      const name = document.createElement("span");
      name.className = "search-name";
      name.textContent = candidate.name;

      const tag = document.createElement("span");
      tag.className = `tag tag-${candidate.label.toLowerCase()}`;
      tag.textContent = candidate.label;

      const location = document.createElement("span");
      location.className = "search-location";
      location.textContent = candidate.location ?? "";

      row.append(name, tag, location);
      row.addEventListener("click", () => this.store.select(candidate.uid));
      this.list.append(row);
    }
  }

  private showError(query: string, error: unknown): void {
    this.errorBox.textContent = "";
    const note = document.createElement("span");
    note.textContent = `Search failed: ${error instanceof Error ? error.message : String(error)} `;
    const retry = document.createElement("button");
    retry.className = "search-retry";
    retry.textContent = "Retry";
    retry.addEventListener("click", () => void this.runSearch(query));
    this.errorBox.append(note, retry);
    this.errorBox.hidden = false;
  }

  private hideError(): void {
    this.errorBox.hidden = true;
    this.errorBox.textContent = "";
  }

  get rows(): HTMLElement[] {
    return [...this.list.querySelectorAll<HTMLElement>(".search-row")];
  }

  get retryButton(): HTMLButtonElement | null {
    return this.errorBox.querySelector("button");
  }
}
