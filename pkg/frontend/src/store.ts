/** Root-level selection state shared by all three panels. */

export type PanelMode = "global-search" | "dossier";

export interface UiSelection {
  selectedUid: string | null;
  panelMode: PanelMode;
}

export type SelectionListener = (selection: UiSelection) => void;

export class SelectionStore {
  private uid: string | null = null;
  private readonly listeners = new Set<SelectionListener>();

  /** A selected uid always implies dossier mode; there is no third state. */
  get selection(): UiSelection {
    return {
      selectedUid: this.uid,
      panelMode: this.uid === null ? "global-search" : "dossier",
    };
  }

  select(uid: string | null): void {
    if (uid === this.uid) return;
    this.uid = uid;
    for (const listener of [...this.listeners]) listener(this.selection);
  }

  clear(): void {
    this.select(null);
  }

  /** Fires immediately with the current state, then on every change. */
  subscribe(listener: SelectionListener): () => void {
    this.listeners.add(listener);
    listener(this.selection);
    return () => this.listeners.delete(listener);
  }
}
