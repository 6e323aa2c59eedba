// Pure edit operations on model documents. Every operation returns a new
// document; the canvas and panels re-render from it. Server-side
// validation stays authoritative; these helpers only keep documents
// structurally coherent while editing.

import type { ComponentDoc, ComponentKind, ModelDoc, RelationshipDoc, RelationshipKind } from "./types.js";

let counter = 0;

export function freshId(prefix: string, doc: ModelDoc): string {
  const taken = new Set<string>([
    ...doc.components.map((c) => c.id),
    ...doc.relationships.map((r) => r.id),
  ]);
  for (;;) {
    counter += 1;
    const candidate = `${prefix}${counter}`;
    if (!taken.has(candidate)) return candidate;
  }
}

export function emptyModel(name: string): ModelDoc {
  return { id: "", name, components: [], relationships: [] };
}

export function addComponent(doc: ModelDoc, kind: ComponentKind, name?: string): { doc: ModelDoc; id: string } {
  const id = freshId(kind === "biotic" ? "b" : "a", doc);
  const component: ComponentDoc = {
    id,
    display_name: name ?? (kind === "biotic" ? `Population ${id}` : `Substance ${id}`),
    kind,
    params: {},
  };
  return { doc: { ...doc, components: [...doc.components, component] }, id };
}

export function removeComponent(doc: ModelDoc, componentId: string): ModelDoc {
  return {
    ...doc,
    components: doc.components.filter((c) => c.id !== componentId),
    relationships: doc.relationships.filter(
      (r) => r.source !== componentId && r.target !== componentId,
    ),
  };
}

export function addRelationship(
  doc: ModelDoc,
  kind: RelationshipKind,
  source: string,
  target: string,
): { doc: ModelDoc; id: string } | { error: string } {
  const sourceComp = doc.components.find((c) => c.id === source);
  const targetComp = doc.components.find((c) => c.id === target);
  if (!sourceComp || !targetComp) return { error: "both endpoints must exist" };
  if (doc.relationships.some((r) => r.kind === kind && r.source === source && r.target === target)) {
    return { error: `a ${kind} arrow already links these components` };
  }
  if (kind !== "affects" && sourceComp.kind !== "biotic") {
    return { error: `a ${kind} source must be biotic` };
  }
  if (kind === "consumes" && targetComp.kind !== "biotic") {
    return { error: "a consumes target must be biotic" };
  }
  const id = freshId("r", doc);
  const relationship: RelationshipDoc = { id, kind, source, target, params: {} };
  return { doc: { ...doc, relationships: [...doc.relationships, relationship] }, id };
}

export function removeRelationship(doc: ModelDoc, relationshipId: string): ModelDoc {
  return { ...doc, relationships: doc.relationships.filter((r) => r.id !== relationshipId) };
}

export function renameComponent(doc: ModelDoc, componentId: string, name: string): ModelDoc {
  return {
    ...doc,
    components: doc.components.map((c) =>
      c.id === componentId ? { ...c, display_name: name } : c,
    ),
  };
}

/** Set a parameter; a null/NaN value clears it so the engine default applies. */
export function setComponentParam(
  doc: ModelDoc,
  componentId: string,
  param: string,
  value: number | null,
): ModelDoc {
  return {
    ...doc,
    components: doc.components.map((c) => {
      if (c.id !== componentId) return c;
      const params = { ...c.params };
      if (value === null || Number.isNaN(value)) delete params[param];
      else params[param] = value;
      return { ...c, params };
    }),
  };
}

export function setRelationshipParam(
  doc: ModelDoc,
  relationshipId: string,
  param: string,
  value: number | null,
): ModelDoc {
  return {
    ...doc,
    relationships: doc.relationships.map((r) => {
      if (r.id !== relationshipId) return r;
      const params = { ...r.params };
      if (value === null || Number.isNaN(value)) delete params[param];
      else params[param] = value;
      return { ...r, params };
    }),
  };
}

/** Merge suggested parameters (species lookup) without overwriting values
 * the author already set. */
export function mergeSuggestedParams(
  doc: ModelDoc,
  componentId: string,
  suggested: Record<string, number>,
): ModelDoc {
  return {
    ...doc,
    components: doc.components.map((c) => {
      if (c.id !== componentId) return c;
      const params = { ...c.params };
      for (const [name, value] of Object.entries(suggested)) {
        if (!(name in params)) params[name] = value;
      }
      return { ...c, params };
    }),
  };
}
