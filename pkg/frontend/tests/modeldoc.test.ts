import { describe, expect, it } from "vitest";

import {
  addComponent,
  addRelationship,
  emptyModel,
  mergeSuggestedParams,
  removeComponent,
  removeRelationship,
  setComponentParam,
} from "../src/modeldoc";
import type { ModelDoc } from "../src/types";

function wolfSheep(): { doc: ModelDoc; wolf: string; sheep: string } {
  let { doc, id: wolf } = addComponent(emptyModel("test"), "biotic", "Wolf");
  const added = addComponent(doc, "biotic", "Sheep");
  return { doc: added.doc, wolf, sheep: added.id };
}

describe("model document editing", () => {
  it("adds components with fresh ids", () => {
    const { doc } = wolfSheep();
    expect(doc.components).toHaveLength(2);
    expect(new Set(doc.components.map((c) => c.id)).size).toBe(2);
  });

  it("edits never mutate the previous document", () => {
    const { doc, wolf } = wolfSheep();
    const next = setComponentParam(doc, wolf, "lifespan", 180);
    expect(doc.components[0].params).toEqual({});
    expect(next.components[0].params).toEqual({ lifespan: 180 });
  });

  it("clearing a parameter restores the engine default", () => {
    const { doc, wolf } = wolfSheep();
    const set = setComponentParam(doc, wolf, "lifespan", 180);
    const cleared = setComponentParam(set, wolf, "lifespan", null);
    expect(cleared.components[0].params).toEqual({});
  });

  it("connects components and rejects duplicate arrows", () => {
    const { doc, wolf, sheep } = wolfSheep();
    const first = addRelationship(doc, "consumes", wolf, sheep);
    expect("id" in first).toBe(true);
    if ("error" in first) throw new Error(first.error);
    const duplicate = addRelationship(first.doc, "consumes", wolf, sheep);
    expect(duplicate).toHaveProperty("error");
  });

  it("rejects consumes arrows into abiotic components", () => {
    const { doc, wolf } = wolfSheep();
    const withWater = addComponent(doc, "abiotic", "Water");
    const result = addRelationship(withWater.doc, "consumes", wolf, withWater.id);
    expect(result).toHaveProperty("error");
    const produces = addRelationship(withWater.doc, "produces", wolf, withWater.id);
    expect("id" in produces).toBe(true);
  });

  it("rejects consumes/destroys/produces from abiotic sources", () => {
    const { doc, wolf } = wolfSheep();
    const withWater = addComponent(doc, "abiotic", "Water");
    expect(addRelationship(withWater.doc, "destroys", withWater.id, wolf)).toHaveProperty("error");
    expect("id" in addRelationship(withWater.doc, "affects", withWater.id, wolf)).toBe(true);
  });

  it("removing a component drops its relationships", () => {
    const { doc, wolf, sheep } = wolfSheep();
    const linked = addRelationship(doc, "consumes", wolf, sheep);
    if ("error" in linked) throw new Error(linked.error);
    const pruned = removeComponent(linked.doc, sheep);
    expect(pruned.components.map((c) => c.id)).toEqual([wolf]);
    expect(pruned.relationships).toEqual([]);
  });

  it("removes relationships by id", () => {
    const { doc, wolf, sheep } = wolfSheep();
    const linked = addRelationship(doc, "affects", wolf, sheep);
    if ("error" in linked) throw new Error(linked.error);
    expect(removeRelationship(linked.doc, linked.id).relationships).toEqual([]);
  });

  it("suggested parameters never overwrite user values", () => {
    const { doc, wolf } = wolfSheep();
    const set = setComponentParam(doc, wolf, "lifespan", 60);
    const merged = mergeSuggestedParams(set, wolf, { lifespan: 180, body_mass: 30 });
    expect(merged.components[0].params).toEqual({ lifespan: 60, body_mass: 30 });
  });
});
