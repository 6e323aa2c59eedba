// Canvas layout: node positions are presentation-only and never alter
// model semantics. The layout lives beside the document in memory (and
// nowhere else); new or unknown nodes get deterministic grid slots.

import type { ModelDoc } from "./types.js";

export interface NodePosition {
  x: number;
  y: number;
}

export type Layout = Record<string, NodePosition>;

export const NODE_WIDTH = 132;
export const NODE_HEIGHT = 54;

const COLUMNS = 3;
const CELL_W = 200;
const CELL_H = 110;
const ORIGIN = { x: 60, y: 40 };

/** Ensure every component has a position; existing positions are kept. */
export function ensureLayout(doc: ModelDoc, layout: Layout): Layout {
  const next: Layout = {};
  let slot = 0;
  const taken = new Set(
    Object.entries(layout)
      .filter(([id]) => doc.components.some((c) => c.id === id))
      .map(([, p]) => `${Math.round(p.x)},${Math.round(p.y)}`),
  );
  for (const component of doc.components) {
    const existing = layout[component.id];
    if (existing) {
      next[component.id] = existing;
      continue;
    }
    let position: NodePosition;
    do {
      position = {
        x: ORIGIN.x + (slot % COLUMNS) * CELL_W,
        y: ORIGIN.y + Math.floor(slot / COLUMNS) * CELL_H,
      };
      slot += 1;
    } while (taken.has(`${position.x},${position.y}`));
    next[component.id] = position;
  }
  return next;
}

export function nodeCenter(position: NodePosition): NodePosition {
  return { x: position.x + NODE_WIDTH / 2, y: position.y + NODE_HEIGHT / 2 };
}

export function hitNode(doc: ModelDoc, layout: Layout, x: number, y: number): string | null {
  // last-drawn node wins: iterate in reverse declaration order
  for (let i = doc.components.length - 1; i >= 0; i -= 1) {
    const component = doc.components[i];
    const p = layout[component.id];
    if (!p) continue;
    if (x >= p.x && x <= p.x + NODE_WIDTH && y >= p.y && y <= p.y + NODE_HEIGHT) {
      return component.id;
    }
  }
  return null;
}

function segmentDistance(
  px: number, py: number, x1: number, y1: number, x2: number, y2: number,
): number {
  const dx = x2 - x1;
  const dy = y2 - y1;
  const lengthSq = dx * dx + dy * dy;
  const t = lengthSq === 0 ? 0 : Math.max(0, Math.min(1, ((px - x1) * dx + (py - y1) * dy) / lengthSq));
  const cx = x1 + t * dx;
  const cy = y1 + t * dy;
  return Math.hypot(px - cx, py - cy);
}

export function hitEdge(
  doc: ModelDoc,
  layout: Layout,
  x: number,
  y: number,
  tolerance = 8,
): string | null {
  let best: string | null = null;
  let bestDistance = tolerance;
  for (const relationship of doc.relationships) {
    const a = layout[relationship.source];
    const b = layout[relationship.target];
    if (!a || !b) continue;
    const ca = nodeCenter(a);
    const cb = nodeCenter(b);
    const distance = segmentDistance(x, y, ca.x, ca.y, cb.x, cb.y);
    if (distance < bestDistance) {
      bestDistance = distance;
      best = relationship.id;
    }
  }
  return best;
}
