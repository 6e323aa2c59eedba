// Model canvas: rounded component boxes connected by relationship arrows.
// Dragging moves layout only; semantic edits go through modeldoc helpers.

import { Layout, NODE_HEIGHT, NODE_WIDTH, ensureLayout, hitEdge, hitNode, nodeCenter } from "./layout.js";
import type { ModelDoc, RelationshipKind } from "./types.js";

export type Selection =
  | { kind: "component"; id: string }
  | { kind: "relationship"; id: string }
  | null;

export interface EditorCallbacks {
  onSelect(selection: Selection): void;
  onConnect(source: string, target: string): void;
  onLayoutChange(): void;
}

const KIND_FILL: Record<string, string> = { biotic: "#dcedc8", abiotic: "#b3e5fc" };
const EDGE_COLOR: Record<RelationshipKind, string> = {
  consumes: "#c62828",
  destroys: "#6d4c41",
  produces: "#2e7d32",
  affects: "#1565c0",
};

export class ModelCanvas {
  layout: Layout = {};
  selection: Selection = null;
  connectKind: RelationshipKind | null = null; // armed "draw arrow" mode
  private doc: ModelDoc = { id: "", name: "", components: [], relationships: [] };
  private dragId: string | null = null;
  private dragOffset = { x: 0, y: 0 };
  private connectSource: string | null = null;
  private pointer = { x: 0, y: 0 };

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly callbacks: EditorCallbacks,
  ) {
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.pointerUp(e));
  }

  setModel(doc: ModelDoc): void {
    this.doc = doc;
    this.layout = ensureLayout(doc, this.layout);
    if (this.selection) {
      const pool =
        this.selection.kind === "component" ? doc.components : doc.relationships;
      if (!pool.some((e: { id: string }) => e.id === this.selection!.id)) this.selection = null;
    }
    this.render();
  }

  armConnect(kind: RelationshipKind): void {
    this.connectKind = kind;
    this.connectSource = null;
    this.render();
  }

  disarm(): void {
    this.connectKind = null;
    this.connectSource = null;
    this.render();
  }

  private canvasPoint(e: PointerEvent): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect();
    return { x: e.clientX - rect.left, y: e.clientY - rect.top };
  }

  private pointerDown(e: PointerEvent): void {
    const { x, y } = this.canvasPoint(e);
    const nodeId = hitNode(this.doc, this.layout, x, y);
    if (this.connectKind) {
      if (nodeId && !this.connectSource) {
        this.connectSource = nodeId;
      } else if (nodeId && this.connectSource) {
        this.callbacks.onConnect(this.connectSource, nodeId);
        this.disarm();
      } else {
        this.disarm();
      }
      this.render();
      return;
    }
    if (nodeId) {
      this.selection = { kind: "component", id: nodeId };
      this.dragId = nodeId;
      const p = this.layout[nodeId];
      this.dragOffset = { x: x - p.x, y: y - p.y };
    } else {
      const edgeId = hitEdge(this.doc, this.layout, x, y);
      this.selection = edgeId ? { kind: "relationship", id: edgeId } : null;
    }
    this.callbacks.onSelect(this.selection);
    this.render();
  }

  private pointerMove(e: PointerEvent): void {
    const point = this.canvasPoint(e);
    this.pointer = point;
    if (this.dragId) {
      this.layout[this.dragId] = {
        x: point.x - this.dragOffset.x,
        y: point.y - this.dragOffset.y,
      };
      this.render();
    } else if (this.connectSource) {
      this.render();
    }
  }

  private pointerUp(_e: PointerEvent): void {
    if (this.dragId) {
      this.dragId = null;
      this.callbacks.onLayoutChange();
    }
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#fafafa";
    ctx.fillRect(0, 0, width, height);

    for (const relationship of this.doc.relationships) {
      const a = this.layout[relationship.source];
      const b = this.layout[relationship.target];
      if (!a || !b) continue;
      const from = nodeCenter(a);
      const to = nodeCenter(b);
      const selected =
        this.selection?.kind === "relationship" && this.selection.id === relationship.id;
      this.arrow(ctx, from.x, from.y, to.x, to.y, EDGE_COLOR[relationship.kind], selected);
      ctx.fillStyle = EDGE_COLOR[relationship.kind];
      ctx.font = "11px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(relationship.kind, (from.x + to.x) / 2, (from.y + to.y) / 2 - 5);
    }

    if (this.connectSource) {
      const from = nodeCenter(this.layout[this.connectSource]);
      this.arrow(ctx, from.x, from.y, this.pointer.x, this.pointer.y, "#9e9e9e", false);
    }

    for (const component of this.doc.components) {
      const p = this.layout[component.id];
      if (!p) continue;
      const selected =
        this.selection?.kind === "component" && this.selection.id === component.id;
      ctx.fillStyle = KIND_FILL[component.kind] ?? "#eeeeee";
      ctx.strokeStyle = selected ? "#d84315" : "#555";
      ctx.lineWidth = selected ? 2.5 : 1.2;
      this.roundRect(ctx, p.x, p.y, NODE_WIDTH, NODE_HEIGHT, 14);
      ctx.fill();
      ctx.stroke();
      ctx.fillStyle = "#212121";
      ctx.font = "bold 12px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(component.display_name, p.x + NODE_WIDTH / 2, p.y + 24, NODE_WIDTH - 12);
      ctx.font = "10px sans-serif";
      ctx.fillStyle = "#616161";
      ctx.fillText(component.kind, p.x + NODE_WIDTH / 2, p.y + 40);
    }

    if (this.connectKind) {
      ctx.fillStyle = "#d84315";
      ctx.font = "12px sans-serif";
      ctx.textAlign = "left";
      const hint = this.connectSource
        ? `click the target of the ${this.connectKind} arrow`
        : `click the source of the ${this.connectKind} arrow`;
      ctx.fillText(hint, 10, height - 10);
    }
  }

  private roundRect(
    ctx: CanvasRenderingContext2D,
    x: number, y: number, w: number, h: number, r: number,
  ): void {
    ctx.beginPath();
    ctx.moveTo(x + r, y);
    ctx.arcTo(x + w, y, x + w, y + h, r);
    ctx.arcTo(x + w, y + h, x, y + h, r);
    ctx.arcTo(x, y + h, x, y, r);
    ctx.arcTo(x, y, x + w, y, r);
    ctx.closePath();
  }

  private arrow(
    ctx: CanvasRenderingContext2D,
    x1: number, y1: number, x2: number, y2: number,
    color: string,
    emphasized: boolean,
  ): void {
    ctx.strokeStyle = color;
    ctx.fillStyle = color;
    ctx.lineWidth = emphasized ? 3 : 1.6;
    ctx.beginPath();
    ctx.moveTo(x1, y1);
    ctx.lineTo(x2, y2);
    ctx.stroke();
    const angle = Math.atan2(y2 - y1, x2 - x1);
    const midX = (x1 + x2) / 2;
    const midY = (y1 + y2) / 2;
    ctx.beginPath();
    ctx.moveTo(midX, midY);
    ctx.lineTo(midX - 10 * Math.cos(angle - 0.45), midY - 10 * Math.sin(angle - 0.45));
    ctx.lineTo(midX - 10 * Math.cos(angle + 0.45), midY - 10 * Math.sin(angle + 0.45));
    ctx.closePath();
    ctx.fill();
  }
}
