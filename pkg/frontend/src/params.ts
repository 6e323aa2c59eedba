// Parameter metadata for the editor panel: display order and unit hints.

import type { ComponentKind, RelationshipKind } from "./types.js";

export interface ParamInfo {
  name: string;
  label: string;
  unit: string;
}

export const BIOTIC_PARAMS: ParamInfo[] = [
  { name: "carbon_biomass", label: "Carbon Biomass", unit: "Kilogram (per individual or per m²)" },
  { name: "respiratory_rate", label: "Respiratory Rate", unit: "Kilograms per second" },
  { name: "photosynthesis_rate", label: "Photosynthesis Rate", unit: "Kilogram per second" },
  { name: "assimilation_efficiency", label: "Assimilation Efficiency", unit: "0.0 – 1.0" },
  { name: "move_direction", label: "Move Direction", unit: "Directional degree" },
  { name: "move_velocity", label: "Move Velocity", unit: "Meter per second" },
  { name: "lifespan", label: "Lifespan", unit: "Day * 30" },
  { name: "reproductive_maturity", label: "Reproductive Maturity", unit: "Day * 30" },
  { name: "reproductive_interval", label: "Reproductive Interval", unit: "Day * 30" },
  { name: "offspring_count", label: "Offspring Count", unit: "One Unit" },
  { name: "starting_population", label: "Starting Population", unit: "One Unit (individuals or m²)" },
  { name: "minimum_population", label: "Minimum Population", unit: "One Unit (individuals or m²)" },
  { name: "body_mass", label: "Body Mass", unit: "Kilogram" },
];

export const ABIOTIC_PARAMS: ParamInfo[] = [
  { name: "amount", label: "Amount", unit: "Kilograms" },
  { name: "minimum_amount", label: "Minimum Amount", unit: "Kilograms" },
  { name: "growth_rate", label: "Growth Rate", unit: "Percentage (as a fraction)" },
];

export const RELATIONSHIP_PARAMS: Record<RelationshipKind, ParamInfo[]> = {
  consumes: [
    { name: "interaction_probability", label: "Interaction Probability", unit: "0.0 – 1.0" },
    { name: "consumption_rate", label: "Consumption Rate", unit: "fraction of target's carbon-biomass" },
  ],
  destroys: [
    { name: "interaction_probability", label: "Interaction Probability", unit: "0.0 – 1.0" },
    { name: "destruction_rate", label: "Destruction Rate", unit: "fraction of target removed" },
  ],
  affects: [
    { name: "interaction_probability", label: "Interaction Probability", unit: "0.0 – 1.0" },
    { name: "growth_rate", label: "Growth Rate", unit: "growth multiplier delta (0.10 = +10%)" },
  ],
  produces: [
    { name: "production_rate", label: "Production Rate", unit: "Kilograms per second" },
  ],
};

export function paramsForComponent(kind: ComponentKind): ParamInfo[] {
  return kind === "biotic" ? BIOTIC_PARAMS : ABIOTIC_PARAMS;
}

export const RELATIONSHIP_KINDS: RelationshipKind[] = [
  "consumes",
  "destroys",
  "produces",
  "affects",
];
