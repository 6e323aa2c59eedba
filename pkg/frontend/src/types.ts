// Shared document and service payload types. The service's model JSON is
// the single source of truth; the studio only adds presentation state.

export type ComponentKind = "biotic" | "abiotic";

export type RelationshipKind = "consumes" | "destroys" | "produces" | "affects";

export interface ComponentDoc {
  id: string;
  display_name: string;
  kind: ComponentKind;
  population_basis?: "individuals" | "area_density";
  params: Record<string, number>;
}

export interface RelationshipDoc {
  id: string;
  kind: RelationshipKind;
  source: string;
  target: string;
  params: Record<string, number>;
}

export interface ModelDoc {
  id: string;
  name: string;
  project_id?: string;
  notes?: string;
  components: ComponentDoc[];
  relationships: RelationshipDoc[];
}

export interface ExemplarInfo {
  id: string;
  title: string;
  description: string;
}

export interface RunConfig {
  max_ticks?: number;
  rng_seed?: number;
  [key: string]: number | undefined;
}

export interface StreamColumn {
  component_id: string;
  display_name: string;
}

export interface StreamHeader {
  components: StreamColumn[];
}

export interface StreamRecord {
  tick: number;
  counts: Record<string, number>;
}

export interface RunSnapshot {
  id: string;
  model_id: string;
  status: "pending" | "running" | "done" | "failed";
  records_so_far: number;
  error?: string;
}

export interface SpeciesCandidate {
  taxon_id: string;
  scientific_name: string;
  common_name: string | null;
}

export interface TraitSuggestion {
  parameters: Record<string, number>;
  warnings: string[];
}
