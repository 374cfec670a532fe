/** Small 2D force-directed layout: spring edges, pairwise repulsion,
 * gentle centering. O(n^2) per step, which is fine under the node cap. */

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  vx: number;
  vy: number;
}

export interface LayoutEdge {
  source: string;
  target: string;
}

const SPRING_LENGTH = 80;
const SPRING_STRENGTH = 0.02;
const REPULSION = 1800;
const CENTERING = 0.01;
const DAMPING = 0.85;

/** Deterministic placement angle so repeated renders look identical. */
function hashAngle(id: string): number {
  let h = 2166136261;
  for (let i = 0; i < id.length; i++) {
    h = Math.imul(h ^ id.charCodeAt(i), 16777619);
  }
  return ((h >>> 0) % 3600) / 3600 * 2 * Math.PI;
}

export class ForceLayout {
  readonly nodes: LayoutNode[] = [];
  private readonly byId = new Map<string, LayoutNode>();
  private edges: LayoutEdge[] = [];

  constructor(
    private readonly width: number,
    private readonly height: number,
  ) {}

  setGraph(ids: string[], edges: LayoutEdge[]): void {
    this.nodes.length = 0;
    this.byId.clear();
    const cx = this.width / 2;
    const cy = this.height / 2;
    const radius = Math.min(this.width, this.height) / 3;
    ids.forEach((id, index) => {
      const angle = hashAngle(id);
      const r = radius * (0.4 + 0.6 * ((index % 7) / 7));
      const node: LayoutNode = {
        id,
        x: cx + r * Math.cos(angle),
        y: cy + r * Math.sin(angle),
        vx: 0,
        vy: 0,
      };
      this.nodes.push(node);
      this.byId.set(id, node);
    });
    this.edges = edges.filter(
      (e) => this.byId.has(e.source) && this.byId.has(e.target),
    );
  }

  get(id: string): LayoutNode | undefined {
    return this.byId.get(id);
  }

  step(): void {
    const cx = this.width / 2;
    const cy = this.height / 2;
    for (let i = 0; i < this.nodes.length; i++) {
      const a = this.nodes[i]!;
      for (let j = i + 1; j < this.nodes.length; j++) {
        const b = this.nodes[j]!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let sq = dx * dx + dy * dy;
        if (sq < 1) {
          // coincident nodes get a deterministic nudge apart
          dx = 0.5 + (i % 3);
          dy = 0.5 + (j % 3);
          sq = dx * dx + dy * dy;
        }
        const force = REPULSION / sq;
        const dist = Math.sqrt(sq);
        const fx = (dx / dist) * force;
        const fy = (dy / dist) * force;
        a.vx += fx;
        a.vy += fy;
        b.vx -= fx;
        b.vy -= fy;
      }
      a.vx += (cx - a.x) * CENTERING;
      a.vy += (cy - a.y) * CENTERING;
    }
    for (const edge of this.edges) {
      const a = this.byId.get(edge.source)!;
      const b = this.byId.get(edge.target)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(1, Math.sqrt(dx * dx + dy * dy));
      const pull = (dist - SPRING_LENGTH) * SPRING_STRENGTH;
      const fx = (dx / dist) * pull;
      const fy = (dy / dist) * pull;
      a.vx += fx;
      a.vy += fy;
      b.vx -= fx;
      b.vy -= fy;
    }
    const margin = 16;
    for (const node of this.nodes) {
      node.vx *= DAMPING;
      node.vy *= DAMPING;
      node.x += node.vx;
      node.y += node.vy;
      node.x = Math.min(this.width - margin, Math.max(margin, node.x));
      node.y = Math.min(this.height - margin, Math.max(margin, node.y));
    }
  }

  run(steps: number): void {
    for (let i = 0; i < steps; i++) this.step();
  }
}
