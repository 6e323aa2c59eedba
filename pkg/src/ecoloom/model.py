"""Core data model for ecological conceptual models.

A conceptual model is a named graph of components (populations or
substances) and relationships (directed interactions) with quantitative
parameters. This module defines the value types, the documented parameter
defaults, and validation against the ecology meta-model rules. All
operations here are pure: they never mutate their inputs.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field, fields, replace
from enum import Enum

__all__ = [
    "ComponentKind",
    "PopulationBasis",
    "RelationshipKind",
    "BioticParams",
    "AbioticParams",
    "Component",
    "Relationship",
    "ConceptualModel",
    "Violation",
    "ValidationReport",
    "BIOTIC_PARAM_DEFAULTS",
    "ABIOTIC_PARAM_DEFAULTS",
    "RELATIONSHIP_PARAM_FIELDS",
    "RELATIONSHIP_PARAM_DEFAULTS",
    "new_id",
    "apply_defaults",
    "validate_model",
]


class ComponentKind(str, Enum):
    BIOTIC = "biotic"
    ABIOTIC = "abiotic"


class PopulationBasis(str, Enum):
    """How a biotic population is counted.

    INDIVIDUALS counts organisms; AREA_DENSITY counts square meters of
    coverage (each simulated agent then stands for one square meter).
    """

    INDIVIDUALS = "individuals"
    AREA_DENSITY = "area_density"


class RelationshipKind(str, Enum):
    CONSUMES = "consumes"
    DESTROYS = "destroys"
    PRODUCES = "produces"
    AFFECTS = "affects"


def new_id() -> str:
    """Fresh opaque identifier for models and model elements."""
    return uuid.uuid4().hex


# Documented defaults for omitted parameters. Zero means "disabled" for
# lifespan, reproduction, movement and population floors; body_mass
# defaults to 1 kg so freshly spawned agents never start with zero biomass.
BIOTIC_PARAM_DEFAULTS: dict[str, float] = {
    "carbon_biomass": 0.0,  # 0 -> fall back to body_mass at world init
    "respiratory_rate": 0.0,
    "photosynthesis_rate": 0.0,
    "assimilation_efficiency": 1.0,
    "move_direction": 0.0,
    "move_velocity": 0.0,
    "lifespan": 0.0,  # 0 -> no age limit
    "reproductive_maturity": 0.0,
    "reproductive_interval": 0.0,  # 0 -> reproduction disabled
    "offspring_count": 0.0,
    "starting_population": 0.0,
    "minimum_population": 0.0,
    "body_mass": 1.0,
}

ABIOTIC_PARAM_DEFAULTS: dict[str, float] = {
    "amount": 0.0,
    "minimum_amount": 0.0,
    "growth_rate": 0.0,
}

# Which parameters belong to each relationship kind; any other parameter
# on a relationship of that kind is a validation violation.
RELATIONSHIP_PARAM_FIELDS: dict[RelationshipKind, tuple[str, ...]] = {
    RelationshipKind.CONSUMES: ("interaction_probability", "consumption_rate"),
    RelationshipKind.DESTROYS: ("interaction_probability", "destruction_rate"),
    RelationshipKind.AFFECTS: ("interaction_probability", "growth_rate"),
    RelationshipKind.PRODUCES: ("production_rate",),
}

RELATIONSHIP_PARAM_DEFAULTS: dict[str, float] = {
    "interaction_probability": 1.0,
    "consumption_rate": 0.0,
    "destruction_rate": 0.0,
    "growth_rate": 0.0,
    "production_rate": 0.0,
}


@dataclass
class BioticParams:
    """Parameters of a living population.

    ``None`` means "omitted by the author"; :func:`apply_defaults` fills
    omitted fields with the documented defaults. Units: biomass and body
    mass in kilograms (per individual, or per m^2 for area-density
    populations), rates in kilograms per second, direction in compass
    degrees, velocity in meters per second, ages and intervals in months
    (one month equals thirty days).
    """

    carbon_biomass: float | None = None
    respiratory_rate: float | None = None
    photosynthesis_rate: float | None = None
    assimilation_efficiency: float | None = None
    move_direction: float | None = None
    move_velocity: float | None = None
    lifespan: float | None = None
    reproductive_maturity: float | None = None
    reproductive_interval: float | None = None
    offspring_count: float | None = None
    starting_population: float | None = None
    minimum_population: float | None = None
    body_mass: float | None = None

    def filled(self) -> "BioticParams":
        """Copy with every omitted field set to its documented default."""
        values = {
            name: (getattr(self, name) if getattr(self, name) is not None else default)
            for name, default in BIOTIC_PARAM_DEFAULTS.items()
        }
        return BioticParams(**values)

    def missing(self) -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name) is None]


@dataclass
class AbioticParams:
    """Parameters of a nonliving substance pool (amounts in kilograms)."""

    amount: float | None = None
    minimum_amount: float | None = None
    growth_rate: float | None = None

    def filled(self) -> "AbioticParams":
        values = {
            name: (getattr(self, name) if getattr(self, name) is not None else default)
            for name, default in ABIOTIC_PARAM_DEFAULTS.items()
        }
        return AbioticParams(**values)

    def missing(self) -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name) is None]


@dataclass
class Component:
    """One modeled population or substance."""

    id: str
    display_name: str
    kind: ComponentKind
    params: BioticParams | AbioticParams
    population_basis: PopulationBasis = PopulationBasis.INDIVIDUALS

    @classmethod
    def biotic(
        cls,
        id: str,
        display_name: str,
        *,
        population_basis: PopulationBasis = PopulationBasis.INDIVIDUALS,
        **params: float,
    ) -> "Component":
        return cls(
            id=id,
            display_name=display_name,
            kind=ComponentKind.BIOTIC,
            params=BioticParams(**params),
            population_basis=population_basis,
        )

    @classmethod
    def abiotic(cls, id: str, display_name: str, **params: float) -> "Component":
        return cls(
            id=id,
            display_name=display_name,
            kind=ComponentKind.ABIOTIC,
            params=AbioticParams(**params),
        )


@dataclass
class Relationship:
    """A directed interaction between two components.

    Only the parameters belonging to ``kind`` may be set (see
    ``RELATIONSHIP_PARAM_FIELDS``); the rest must stay ``None``.
    """

    id: str
    kind: RelationshipKind
    source: str
    target: str
    interaction_probability: float | None = None
    consumption_rate: float | None = None
    destruction_rate: float | None = None
    growth_rate: float | None = None
    production_rate: float | None = None

    @classmethod
    def consumes(
        cls,
        id: str,
        source: str,
        target: str,
        *,
        interaction_probability: float | None = None,
        consumption_rate: float | None = None,
    ) -> "Relationship":
        return cls(
            id=id,
            kind=RelationshipKind.CONSUMES,
            source=source,
            target=target,
            interaction_probability=interaction_probability,
            consumption_rate=consumption_rate,
        )

    @classmethod
    def destroys(
        cls,
        id: str,
        source: str,
        target: str,
        *,
        interaction_probability: float | None = None,
        destruction_rate: float | None = None,
    ) -> "Relationship":
        return cls(
            id=id,
            kind=RelationshipKind.DESTROYS,
            source=source,
            target=target,
            interaction_probability=interaction_probability,
            destruction_rate=destruction_rate,
        )

    @classmethod
    def affects(
        cls,
        id: str,
        source: str,
        target: str,
        *,
        interaction_probability: float | None = None,
        growth_rate: float | None = None,
    ) -> "Relationship":
        return cls(
            id=id,
            kind=RelationshipKind.AFFECTS,
            source=source,
            target=target,
            interaction_probability=interaction_probability,
            growth_rate=growth_rate,
        )

    @classmethod
    def produces(
        cls,
        id: str,
        source: str,
        target: str,
        *,
        production_rate: float | None = None,
    ) -> "Relationship":
        return cls(
            id=id,
            kind=RelationshipKind.PRODUCES,
            source=source,
            target=target,
            production_rate=production_rate,
        )

    def own_params(self) -> dict[str, float | None]:
        """Parameters belonging to this relationship's kind, by name."""
        return {name: getattr(self, name) for name in RELATIONSHIP_PARAM_FIELDS[self.kind]}

    def foreign_params(self) -> list[str]:
        """Names of set parameters that do not belong to this kind."""
        own = set(RELATIONSHIP_PARAM_FIELDS[self.kind])
        return [
            name
            for name in RELATIONSHIP_PARAM_DEFAULTS
            if name not in own and getattr(self, name) is not None
        ]


@dataclass
class ConceptualModel:
    """A user-authored model: components plus relationships."""

    id: str
    name: str
    components: list[Component] = field(default_factory=list)
    relationships: list[Relationship] = field(default_factory=list)
    project_id: str | None = None
    notes: str | None = None

    def component(self, component_id: str) -> Component | None:
        for comp in self.components:
            if comp.id == component_id:
                return comp
        return None


@dataclass(frozen=True)
class Violation:
    """One broken meta-model rule, attached to a model element."""

    element_id: str
    rule: str
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "valid: no violations"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  [{v.rule}] {v.element_id}: {v.message}" for v in self.violations]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Range rules, shared by validation and document parsing.
# ---------------------------------------------------------------------------


def biotic_range_error(name: str, value: float) -> str | None:
    """Message describing why a biotic parameter value is out of range."""
    if value != value:  # NaN
        return f"{name} must be a finite number"
    if value < 0:
        return f"{name} must be >= 0, got {value}"
    if name == "assimilation_efficiency" and value > 1:
        return f"assimilation_efficiency must be within [0, 1], got {value}"
    if name == "move_direction" and value >= 360:
        return f"move_direction must be within [0, 360), got {value}"
    return None


def abiotic_range_error(name: str, value: float) -> str | None:
    if value != value:
        return f"{name} must be a finite number"
    if name in ("amount", "minimum_amount") and value < 0:
        return f"{name} must be >= 0, got {value}"
    return None


def relationship_range_error(name: str, value: float) -> str | None:
    if value != value:
        return f"{name} must be a finite number"
    if name in ("interaction_probability", "consumption_rate", "destruction_rate"):
        if not 0.0 <= value <= 1.0:
            return f"{name} must be within [0, 1], got {value}"
    elif name == "growth_rate":
        if value < -1.0:
            return f"growth_rate must be >= -1, got {value}"
    elif name == "production_rate":
        if value < 0:
            return f"production_rate must be >= 0, got {value}"
    return None


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def apply_defaults(model: ConceptualModel) -> ConceptualModel:
    """Fill every omitted parameter with its documented default.

    Idempotent, and never overwrites a value the author supplied.
    Returns a new model; the input is untouched.
    """
    components = [replace(c, params=c.params.filled()) for c in model.components]
    relationships = []
    for rel in model.relationships:
        values = {
            name: (
                getattr(rel, name)
                if getattr(rel, name) is not None
                else RELATIONSHIP_PARAM_DEFAULTS[name]
            )
            for name in RELATIONSHIP_PARAM_FIELDS[rel.kind]
        }
        relationships.append(replace(rel, **values))
    return replace(model, components=components, relationships=relationships)


def validate_model(model: ConceptualModel) -> ValidationReport:
    """Check a model against the ecology meta-model rules.

    Violations are data, not exceptions; the model is runnable iff the
    report is empty. Pure: equal models yield equal reports.
    """
    out: list[Violation] = []

    seen_ids: set[str] = set()
    for comp in model.components:
        if comp.id in seen_ids:
            out.append(
                Violation(comp.id, "duplicate-component-id", f"component id {comp.id!r} is not unique")
            )
        seen_ids.add(comp.id)
        out.extend(_check_component(comp))

    kinds = {c.id: c.kind for c in model.components}
    seen_edges: set[tuple[RelationshipKind, str, str]] = set()
    for rel in model.relationships:
        out.extend(_check_relationship(rel, kinds))
        edge = (rel.kind, rel.source, rel.target)
        if edge in seen_edges:
            out.append(
                Violation(
                    rel.id,
                    "duplicate-relationship",
                    f"another {rel.kind.value} relationship already links "
                    f"{rel.source!r} to {rel.target!r}",
                )
            )
        seen_edges.add(edge)

    return ValidationReport(out)


def _check_component(comp: Component) -> list[Violation]:
    out: list[Violation] = []
    if comp.kind is ComponentKind.BIOTIC:
        if not isinstance(comp.params, BioticParams):
            out.append(
                Violation(comp.id, "params-kind-mismatch", "biotic component requires biotic parameters")
            )
            return out
        range_error = biotic_range_error
    else:
        if not isinstance(comp.params, AbioticParams):
            out.append(
                Violation(comp.id, "params-kind-mismatch", "abiotic component requires abiotic parameters")
            )
            return out
        if comp.population_basis is PopulationBasis.AREA_DENSITY:
            out.append(
                Violation(
                    comp.id,
                    "area-density-requires-biotic",
                    "area-density population basis is only meaningful for biotic components",
                )
            )
        range_error = abiotic_range_error

    missing = comp.params.missing()
    if missing:
        out.append(
            Violation(
                comp.id,
                "missing-parameter",
                f"parameters not set (apply_defaults fills them): {', '.join(missing)}",
            )
        )
    for f in fields(comp.params):
        value = getattr(comp.params, f.name)
        if value is None:
            continue
        message = range_error(f.name, value)
        if message:
            out.append(Violation(comp.id, "parameter-out-of-range", message))

    if isinstance(comp.params, BioticParams):
        offspring = comp.params.offspring_count or 0.0
        interval = comp.params.reproductive_interval or 0.0
        if offspring > 0 and interval <= 0:
            out.append(
                Violation(
                    comp.id,
                    "offspring-requires-interval",
                    "offspring_count > 0 requires reproductive_interval > 0",
                )
            )
    return out


def _check_relationship(rel: Relationship, kinds: dict[str, ComponentKind]) -> list[Violation]:
    out: list[Violation] = []

    for endpoint, cid in (("source", rel.source), ("target", rel.target)):
        if cid not in kinds:
            out.append(
                Violation(
                    rel.id,
                    "unknown-component-ref",
                    f"{endpoint} references missing component {cid!r}",
                )
            )

    for name in rel.foreign_params():
        out.append(
            Violation(
                rel.id,
                "foreign-parameter",
                f"{name} does not belong to a {rel.kind.value} relationship",
            )
        )

    missing = [name for name, value in rel.own_params().items() if value is None]
    if missing:
        out.append(
            Violation(
                rel.id,
                "missing-parameter",
                f"parameters not set (apply_defaults fills them): {', '.join(missing)}",
            )
        )
    for name, value in rel.own_params().items():
        if value is None:
            continue
        message = relationship_range_error(name, value)
        if message:
            out.append(Violation(rel.id, "parameter-out-of-range", message))

    source_kind = kinds.get(rel.source)
    target_kind = kinds.get(rel.target)
    needs_biotic_source = rel.kind in (
        RelationshipKind.CONSUMES,
        RelationshipKind.DESTROYS,
        RelationshipKind.PRODUCES,
    )
    if needs_biotic_source and source_kind is ComponentKind.ABIOTIC:
        out.append(
            Violation(
                rel.id,
                "source-must-be-biotic",
                f"a {rel.kind.value} relationship requires a biotic source",
            )
        )
    if rel.kind is RelationshipKind.CONSUMES and target_kind is ComponentKind.ABIOTIC:
        out.append(
            Violation(rel.id, "target-must-be-biotic", "a consumes relationship requires a biotic target")
        )
    return out
