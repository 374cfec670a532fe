/** Center panel: entity dossier card, associates, event feed, and the
 * force-directed neighborhood canvas. */

import type { ApiClient } from "./api.js";
import { NetworkPanel, type NetworkPanelOptions } from "./network.js";
import type { SelectionStore } from "./store.js";
import type { AssociateRow, Dossier, NetworkRow } from "./types.js";

const PROFILE_ORDER = ["location", "address", "purpose", "nominal_capital", "registry_id"];

export class DossierPanel {
  readonly element: HTMLElement;
  readonly network: NetworkPanel;
  private readonly header: HTMLElement;
  private readonly card: HTMLElement;
  private readonly body: HTMLElement;
  private readonly note: HTMLElement;
  private ticket = 0;
  /** resolves when the current load settles; tests await it */
  loading: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly store: SelectionStore,
    networkOptions: NetworkPanelOptions = {},
  ) {
    this.element = document.createElement("div");
    this.element.className = "dossier-panel";

    this.header = document.createElement("div");
    this.header.className = "dossier-header";
    const clear = document.createElement("button");
    clear.className = "dossier-clear";
    clear.textContent = "Back to global search";
    clear.addEventListener("click", () => this.store.clear());
    this.header.append(clear);

    this.note = document.createElement("div");
    this.note.className = "dossier-note";

    this.card = document.createElement("div");
    this.card.className = "dossier-card";

    this.network = new NetworkPanel(store, networkOptions);

    this.body = document.createElement("div");
    this.body.className = "dossier-body";

    this.element.append(this.header, this.note, this.card, this.network.element, this.body);
    store.subscribe((selection) => {
      if (selection.selectedUid) {
        this.loading = this.load(selection.selectedUid);
      } else {
        this.renderEmpty();
      }
    });
  }

  private renderEmpty(): void {
    this.ticket++;
    this.header.hidden = true;
    this.card.textContent = "";
    this.body.textContent = "";
    this.note.textContent = "Select an entity to open its dossier.";
    this.network.clearView();
  }

  private async load(uid: string): Promise<void> {
    const ticket = ++this.ticket;
    this.note.textContent = "Loading dossier...";
    try {
      const [dossier, network] = await Promise.all([
        this.api.entity(uid),
        this.api.network(uid),
      ]);
      if (ticket !== this.ticket) return; // selection moved on
      this.note.textContent = "";
      this.header.hidden = false;
      this.renderCard(dossier);
      this.network.show(
        { uid: dossier.uid, name: dossier.name, label: dossier.label },
        network.rows as unknown as NetworkRow[],
      );
    } catch (error) {
      if (ticket !== this.ticket) return;
      this.card.textContent = "";
      this.body.textContent = "";
      this.note.textContent = `Could not load dossier: ${
        error instanceof Error ? error.message : String(error)
      }`;
      this.network.clearView();
    }
  }

  private renderCard(dossier: Dossier): void {
    this.card.textContent = "";
    const title = document.createElement("h2");
    title.textContent = dossier.name;
    const subtitle = document.createElement("div");
    subtitle.className = "dossier-subtitle";
    subtitle.textContent = [dossier.label, dossier.strength ?? ""]
      .filter(Boolean)
      .join(" · ");
    this.card.append(title, subtitle);

    const profile = document.createElement("dl");
    profile.className = "dossier-profile";
    const keys = [
      ...PROFILE_ORDER.filter((k) => k in dossier.profile),
      ...Object.keys(dossier.profile)
        .filter((k) => !PROFILE_ORDER.includes(k) && k !== "name")
        .sort(),
    ];
    for (const key of keys) {
      const dt = document.createElement("dt");
      dt.textContent = key.replaceAll("_", " ");
      const dd = document.createElement("dd");
      dd.textContent = String(dossier.profile[key]);
      profile.append(dt, dd);
    }
    this.card.append(profile);

    this.body.textContent = "";
    this.body.append(
      this.associateSection("Personnel", dossier.personnel),
      this.associateSection("Affiliations", dossier.affiliations),
      this.eventSection(dossier),
    );
  }

  private associateSection(titleText: string, rows: AssociateRow[]): HTMLElement {
    const section = document.createElement("section");
    section.className = `dossier-${titleText.toLowerCase()}`;
    const title = document.createElement("h3");
    title.textContent = titleText;
    section.append(title);
    if (rows.length === 0) {
      const none = document.createElement("p");
      none.textContent = "None on record.";
      section.append(none);
      return section;
    }
    const list = document.createElement("ul");
    for (const row of rows) {
      const item = document.createElement("li");
      item.className = "associate-row";
      item.dataset.uid = row.uid;
      item.textContent = `${row.name}${row.role ? ` (${row.role})` : ""}`;
      // associates are hop targets just like canvas nodes
      item.addEventListener("click", () => this.store.select(row.uid));
      list.append(item);
    }
    section.append(list);
    return section;
  }

  private eventSection(dossier: Dossier): HTMLElement {
    const section = document.createElement("section");
    section.className = "dossier-events";
    const title = document.createElement("h3");
    title.textContent = "Event history";
    section.append(title);
    const list = document.createElement("ol");
    for (const event of dossier.events) {
      const item = document.createElement("li");
      item.className = "event-row";
      item.textContent = [event.date, event.rubric, event.role]
        .filter(Boolean)
        .join(" · ");
      list.append(item);
    }
    section.append(list);
    return section;
  }
}
