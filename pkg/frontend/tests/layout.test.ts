import { describe, expect, it } from "vitest";

import { addComponent, addRelationship, emptyModel } from "../src/modeldoc";
import { NODE_HEIGHT, NODE_WIDTH, ensureLayout, hitEdge, hitNode } from "../src/layout";

function twoNodeModel() {
  const first = addComponent(emptyModel("m"), "biotic", "Wolf");
  const second = addComponent(first.doc, "biotic", "Sheep");
  const linked = addRelationship(second.doc, "consumes", first.id, second.id);
  if ("error" in linked) throw new Error(linked.error);
  return { doc: linked.doc, wolf: first.id, sheep: second.id };
}

describe("layout", () => {
  it("assigns distinct slots to new nodes and keeps existing positions", () => {
    const { doc, wolf } = twoNodeModel();
    const layout = ensureLayout(doc, {});
    expect(Object.keys(layout)).toHaveLength(2);
    const moved = { ...layout, [wolf]: { x: 400, y: 300 } };
    const again = ensureLayout(doc, moved);
    expect(again[wolf]).toEqual({ x: 400, y: 300 });
  });

  it("hit-tests nodes by their rectangle", () => {
    const { doc, wolf } = twoNodeModel();
    const layout = ensureLayout(doc, {});
    const p = layout[wolf];
    expect(hitNode(doc, layout, p.x + NODE_WIDTH / 2, p.y + NODE_HEIGHT / 2)).toBe(wolf);
    expect(hitNode(doc, layout, p.x - 20, p.y - 20)).toBeNull();
  });

  it("hit-tests edges near the connecting segment", () => {
    const { doc, wolf, sheep } = twoNodeModel();
    const layout = {
      [wolf]: { x: 0, y: 0 },
      [sheep]: { x: 300, y: 0 },
    };
    const midX = (NODE_WIDTH / 2 + 300 + NODE_WIDTH / 2) / 2;
    const midY = NODE_HEIGHT / 2;
    expect(hitEdge(doc, layout, midX, midY + 3)).toBe(doc.relationships[0].id);
    expect(hitEdge(doc, layout, midX, midY + 60)).toBeNull();
  });
});
