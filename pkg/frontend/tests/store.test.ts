import { describe, expect, it } from "vitest";

import { SelectionStore } from "../src/store.js";
import type { UiSelection } from "../src/store.js";

describe("selection store", () => {
  it("maps uid presence to panel mode with no third state", () => {
    const store = new SelectionStore();
    expect(store.selection).toEqual({ selectedUid: null, panelMode: "global-search" });

    store.select("co-1");
    expect(store.selection).toEqual({ selectedUid: "co-1", panelMode: "dossier" });

    store.clear();
    expect(store.selection).toEqual({ selectedUid: null, panelMode: "global-search" });
  });

  it("notifies subscribers immediately and on every change", () => {
    const store = new SelectionStore();
    const seen: UiSelection[] = [];
    store.subscribe((s) => seen.push(s));
    expect(seen).toHaveLength(1);
    expect(seen[0]!.panelMode).toBe("global-search");

    store.select("p-1");
    store.select("p-1"); // no-op, same uid
    store.select(null);
    expect(seen.map((s) => s.selectedUid)).toEqual([null, "p-1", null]);
  });

  it("stops notifying after unsubscribe", () => {
    const store = new SelectionStore();
    const seen: string[] = [];
    const off = store.subscribe((s) => seen.push(s.panelMode));
    off();
    store.select("co-2");
    expect(seen).toEqual(["global-search"]);
  });
});
