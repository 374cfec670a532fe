/** Center-panel network view: a force-directed canvas of the selected
 * entity's neighborhood, mediated by the events that assert each link. */

import { nodeColor } from "./colors.js";
import { ForceLayout, type LayoutEdge } from "./force.js";
import type { SelectionStore } from "./store.js";
import type { NetworkRow } from "./types.js";

export const NODE_CAP = 300;

export interface GraphNodeView {
  id: string;
  name: string;
  label: string;
}

export interface NetworkGraph {
  nodes: GraphNodeView[];
  edges: LayoutEdge[];
  /** distinct nodes left out by the cap */
  hiddenCount: number;
}

export interface CenterEntity {
  uid: string;
  name: string;
  label: string;
}

/** Structural subset of CanvasRenderingContext2D the renderer needs;
 * tests substitute a recording implementation. */
export interface Draw2D {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
  textAlign: CanvasTextAlign;
  textBaseline: CanvasTextBaseline;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export function buildNetworkGraph(
  center: CenterEntity,
  rows: NetworkRow[],
  cap: number = NODE_CAP,
): NetworkGraph {
  const nodes: GraphNodeView[] = [];
  const edges: LayoutEdge[] = [];
  const seen = new Map<string, GraphNodeView>();
  const skipped = new Set<string>();

  const admit = (node: GraphNodeView): boolean => {
    const existing = seen.get(node.id);
    if (existing) return true;
    if (nodes.length >= cap) {
      skipped.add(node.id);
      return false;
    }
    seen.set(node.id, node);
    nodes.push(node);
    return true;
  };

  admit({ id: center.uid, name: center.name, label: center.label });
  for (const row of rows) {
    const neighbor: GraphNodeView = {
      id: row.uid,
      name: row.name,
      label: row.label,
    };
    if (row.via) {
      const viaLabel = [row.kind ?? "EVENT", row.date ?? ""].join(" ").trim();
      const eventNode: GraphNodeView = {
        id: row.via,
        name: viaLabel,
        label: "Event",
      };
      const hasEvent = admit(eventNode);
      const hasNeighbor = admit(neighbor);
      if (hasEvent) edges.push({ source: center.uid, target: row.via });
      if (hasEvent && hasNeighbor) {
        edges.push({ source: row.via, target: row.uid });
      }
    } else if (admit(neighbor)) {
      edges.push({ source: center.uid, target: row.uid });
    }
  }
  return { nodes, edges, hiddenCount: skipped.size };
}

const RADIUS: Record<string, number> = { center: 14, Event: 7 };
const DEFAULT_RADIUS = 9;
const LAYOUT_STEPS = 120;

function radiusOf(node: GraphNodeView, centerUid: string): number {
  if (node.id === centerUid) return RADIUS.center!;
  return RADIUS[node.label] ?? DEFAULT_RADIUS;
}

export interface NetworkPanelOptions {
  width?: number;
  height?: number;
  /** context factory; defaults to the canvas 2D context */
  context?: (canvas: HTMLCanvasElement) => Draw2D | null;
}

export class NetworkPanel {
  readonly element: HTMLElement;
  readonly canvas: HTMLCanvasElement;
  private readonly status: HTMLElement;
  private readonly expandButton: HTMLButtonElement;
  private readonly emptyNote: HTMLElement;
  private readonly ctx: Draw2D | null;
  private readonly layout: ForceLayout;
  private readonly width: number;
  private readonly height: number;

  private graph: NetworkGraph | null = null;
  private center: CenterEntity | null = null;
  private rows: NetworkRow[] = [];
  private cap = NODE_CAP;

  constructor(
    private readonly store: SelectionStore,
    options: NetworkPanelOptions = {},
  ) {
    this.width = options.width ?? 640;
    this.height = options.height ?? 420;
    this.element = document.createElement("div");
    this.element.className = "network-panel";

    this.canvas = document.createElement("canvas");
    this.canvas.width = this.width;
    this.canvas.height = this.height;
    this.canvas.addEventListener("click", (event) => {
      this.handleClick(event.offsetX, event.offsetY);
    });

    this.status = document.createElement("div");
    this.status.className = "network-status";

    this.expandButton = document.createElement("button");
    this.expandButton.className = "network-expand";
    this.expandButton.hidden = true;
    this.expandButton.addEventListener("click", () => this.expand());

    this.emptyNote = document.createElement("div");
    this.emptyNote.className = "network-empty";
    this.emptyNote.textContent = "No connected entities.";
    this.emptyNote.hidden = true;

    this.element.append(this.canvas, this.status, this.expandButton, this.emptyNote);
    const factory = options.context ?? ((c) => c.getContext("2d"));
    this.ctx = factory(this.canvas);
    this.layout = new ForceLayout(this.width, this.height);
  }

  /** Render the neighborhood of one entity; resets the node cap. */
  show(center: CenterEntity, rows: NetworkRow[]): void {
    this.center = center;
    this.rows = rows;
    this.cap = NODE_CAP;
    this.rebuild();
  }

  /** Raise the cap by one page of nodes and re-render. */
  expand(): void {
    this.cap += NODE_CAP;
    this.rebuild();
  }

  clearView(): void {
    this.graph = null;
    this.center = null;
    this.rows = [];
    this.ctx?.clearRect(0, 0, this.width, this.height);
    this.status.textContent = "";
    this.expandButton.hidden = true;
    this.emptyNote.hidden = true;
  }

  get shownNodes(): GraphNodeView[] {
    return this.graph?.nodes ?? [];
  }

  get hiddenCount(): number {
    return this.graph?.hiddenCount ?? 0;
  }

  /** Layout position of a shown node, in canvas coordinates. */
  positionOf(id: string): { x: number; y: number } | null {
    const pos = this.layout.get(id);
    return pos ? { x: pos.x, y: pos.y } : null;
  }

  nodeAt(x: number, y: number): GraphNodeView | null {
    if (!this.graph || !this.center) return null;
    for (const node of this.graph.nodes) {
      const pos = this.layout.get(node.id);
      if (!pos) continue;
      const r = radiusOf(node, this.center.uid) + 3;
      const dx = pos.x - x;
      const dy = pos.y - y;
      if (dx * dx + dy * dy <= r * r) return node;
    }
    return null;
  }

  /** Clicking any node hops the whole dashboard to that entity. */
  handleClick(x: number, y: number): void {
    const node = this.nodeAt(x, y);
    if (node) this.store.select(node.id);
  }

  private rebuild(): void {
    if (!this.center) return;
    if (this.rows.length === 0) {
      this.graph = { nodes: [], edges: [], hiddenCount: 0 };
      this.ctx?.clearRect(0, 0, this.width, this.height);
      this.status.textContent = "";
      this.expandButton.hidden = true;
      this.emptyNote.hidden = false;
      return;
    }
    this.emptyNote.hidden = true;
    this.graph = buildNetworkGraph(this.center, this.rows, this.cap);
    this.layout.setGraph(
      this.graph.nodes.map((n) => n.id),
      this.graph.edges,
    );
    this.layout.run(LAYOUT_STEPS);
    this.status.textContent =
      this.graph.hiddenCount > 0
        ? `${this.graph.nodes.length} nodes shown, ${this.graph.hiddenCount} hidden`
        : `${this.graph.nodes.length} nodes`;
    this.expandButton.hidden = this.graph.hiddenCount === 0;
    this.expandButton.textContent = `Show ${this.graph.hiddenCount} more`;
    this.draw();
  }

  private draw(): void {
    const ctx = this.ctx;
    if (!ctx || !this.graph || !this.center) return;
    ctx.clearRect(0, 0, this.width, this.height);

    ctx.strokeStyle = "#b9c0c9";
    ctx.lineWidth = 1;
    for (const edge of this.graph.edges) {
      const a = this.layout.get(edge.source);
      const b = this.layout.get(edge.target);
      if (!a || !b) continue;
      ctx.beginPath();
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
    }

    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "top";
    for (const node of this.graph.nodes) {
      const pos = this.layout.get(node.id);
      if (!pos) continue;
      const r = radiusOf(node, this.center.uid);
      ctx.fillStyle = nodeColor(node.label);
      ctx.beginPath();
      ctx.arc(pos.x, pos.y, r, 0, 2 * Math.PI);
      ctx.fill();
      if (node.id === this.center.uid) {
        ctx.strokeStyle = "#1f2933";
        ctx.lineWidth = 2;
        ctx.beginPath();
        ctx.arc(pos.x, pos.y, r + 3, 0, 2 * Math.PI);
        ctx.stroke();
        ctx.strokeStyle = "#b9c0c9";
        ctx.lineWidth = 1;
      }
      ctx.fillStyle = "#1f2933";
      ctx.fillText(node.name, pos.x, pos.y + r + 4);
    }
  }
}
