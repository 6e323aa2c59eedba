"""Syntax-directed lowering of a conceptual model into a runnable program.

Every component and relationship compiles separately: biotic components
yield up to five per-population methods, abiotic components a pool
replenishment method, and each relationship exactly one interaction
method. Methods whose parameters make them do nothing (zero velocity,
zero offspring, ...) are suppressed and recorded in the program's no-op
report so every model element remains traceable.

The schedule order is deterministic: all component methods in model
declaration order (each component's methods in a fixed kind order),
then all relationship methods in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from .model import (
    AbioticParams,
    BioticParams,
    Component,
    ComponentKind,
    ConceptualModel,
    PopulationBasis,
    Relationship,
    RelationshipKind,
    ValidationReport,
    validate_model,
)

if TYPE_CHECKING:
    from .engine import EngineConfig

__all__ = [
    "MethodKind",
    "BreedDef",
    "PoolDef",
    "MethodDef",
    "NoOpEntry",
    "SimProgram",
    "CompileError",
    "compile_model",
]


class MethodKind(str, Enum):
    LIFESPAN = "lifespan"
    MINIMUM_POPULATION = "minimum-population"
    BIOMASS = "biomass"
    REPRODUCTION = "reproduction"
    MOVEMENT = "movement"
    CONSUME = "consumes"
    DESTROY = "destroys"
    AFFECT = "affects"
    PRODUCE = "produces"
    ABIOTIC_REPLENISH = "replenish"


# Fixed emission order of per-component methods.
_BIOTIC_METHOD_ORDER = (
    MethodKind.LIFESPAN,
    MethodKind.MINIMUM_POPULATION,
    MethodKind.BIOMASS,
    MethodKind.REPRODUCTION,
    MethodKind.MOVEMENT,
)

_RELATIONSHIP_METHOD_KIND = {
    RelationshipKind.CONSUMES: MethodKind.CONSUME,
    RelationshipKind.DESTROYS: MethodKind.DESTROY,
    RelationshipKind.AFFECTS: MethodKind.AFFECT,
    RelationshipKind.PRODUCES: MethodKind.PRODUCE,
}


@dataclass
class BreedDef:
    """One agent breed, backing a biotic component."""

    component_id: str
    display_name: str
    params: BioticParams
    population_basis: PopulationBasis = PopulationBasis.INDIVIDUALS


@dataclass
class PoolDef:
    """One substance pool, backing an abiotic component."""

    component_id: str
    display_name: str
    params: AbioticParams


@dataclass
class MethodDef:
    """One scheduled method; origin is the model element it came from."""

    origin: str
    kind: MethodKind
    params: dict[str, float] = field(default_factory=dict)
    source: str | None = None  # set for relationship methods
    target: str | None = None


@dataclass(frozen=True)
class NoOpEntry:
    """A suppressed method, kept for traceability."""

    origin: str
    kind: MethodKind
    reason: str


@dataclass
class SimProgram:
    """Compiled intermediate representation interpreted by the engine."""

    breeds: list[BreedDef] = field(default_factory=list)
    pools: list[PoolDef] = field(default_factory=list)
    methods: list[MethodDef] = field(default_factory=list)
    noop_report: list[NoOpEntry] = field(default_factory=list)
    # (component id, display name) pairs in model declaration order;
    # fixes the column order of exported time series.
    columns: list[tuple[str, str]] = field(default_factory=list)
    config: "EngineConfig | None" = None

    def origins(self) -> set[str]:
        """Ids of all model elements traceable through this program."""
        traced = {m.origin for m in self.methods}
        traced.update(entry.origin for entry in self.noop_report)
        return traced


class CompileError(ValueError):
    """Raised when a model with validation violations is compiled."""

    def __init__(self, report: ValidationReport):
        super().__init__(f"model does not validate; {report.summary()}")
        self.report = report


def program_to_document(program: SimProgram) -> dict:
    """JSON-shaped projection of a compiled program (export/inspection)."""
    return {
        "breeds": [
            {
                "component_id": b.component_id,
                "display_name": b.display_name,
                "population_basis": b.population_basis.value,
                "params": {k: v for k, v in vars(b.params).items() if v is not None},
            }
            for b in program.breeds
        ],
        "pools": [
            {
                "component_id": p.component_id,
                "display_name": p.display_name,
                "params": {k: v for k, v in vars(p.params).items() if v is not None},
            }
            for p in program.pools
        ],
        "methods": [
            {
                "origin": m.origin,
                "kind": m.kind.value,
                "params": m.params,
                **({"source": m.source, "target": m.target} if m.source else {}),
            }
            for m in program.methods
        ],
        "noop_report": [
            {"origin": n.origin, "kind": n.kind.value, "reason": n.reason}
            for n in program.noop_report
        ],
        "columns": [
            {"component_id": cid, "display_name": name} for cid, name in program.columns
        ],
    }


def compile_model(model: ConceptualModel, config: "EngineConfig | None" = None) -> SimProgram:
    """Compile a validated model into a simulation program.

    Pure: the same model always yields an equal program. Raises
    :class:`CompileError` if the model has validation violations.
    """
    report = validate_model(model)
    if not report.ok:
        raise CompileError(report)

    program = SimProgram(config=config)
    for comp in model.components:
        program.columns.append((comp.id, comp.display_name))
        if comp.kind is ComponentKind.BIOTIC:
            assert isinstance(comp.params, BioticParams)
            program.breeds.append(
                BreedDef(comp.id, comp.display_name, comp.params, comp.population_basis)
            )
            _compile_biotic(comp, program)
        else:
            assert isinstance(comp.params, AbioticParams)
            program.pools.append(PoolDef(comp.id, comp.display_name, comp.params))
            _compile_abiotic(comp, program)

    breed_params = {b.component_id: b.params for b in program.breeds}
    for rel in model.relationships:
        program.methods.append(_compile_relationship(rel, breed_params))
    return program


def _compile_biotic(comp: Component, program: SimProgram) -> None:
    p = comp.params
    assert isinstance(p, BioticParams)
    for kind in _BIOTIC_METHOD_ORDER:
        if kind is MethodKind.LIFESPAN:
            if p.lifespan and p.lifespan > 0:
                program.methods.append(MethodDef(comp.id, kind, {"lifespan": p.lifespan}))
            else:
                program.noop_report.append(NoOpEntry(comp.id, kind, "lifespan 0 disables the age limit"))
        elif kind is MethodKind.MINIMUM_POPULATION:
            if p.minimum_population and p.minimum_population > 0:
                program.methods.append(
                    MethodDef(comp.id, kind, {"minimum_population": p.minimum_population})
                )
            else:
                program.noop_report.append(NoOpEntry(comp.id, kind, "minimum_population 0 needs no floor"))
        elif kind is MethodKind.BIOMASS:
            if p.photosynthesis_rate or p.respiratory_rate:
                program.methods.append(
                    MethodDef(
                        comp.id,
                        kind,
                        {
                            "photosynthesis_rate": p.photosynthesis_rate or 0.0,
                            "respiratory_rate": p.respiratory_rate or 0.0,
                        },
                    )
                )
            else:
                program.noop_report.append(
                    NoOpEntry(comp.id, kind, "both biomass rates are 0, budget never changes")
                )
        elif kind is MethodKind.REPRODUCTION:
            if p.offspring_count and p.offspring_count > 0:
                program.methods.append(
                    MethodDef(
                        comp.id,
                        kind,
                        {
                            "reproductive_maturity": p.reproductive_maturity or 0.0,
                            "reproductive_interval": p.reproductive_interval or 0.0,
                            "offspring_count": p.offspring_count,
                        },
                    )
                )
            else:
                program.noop_report.append(NoOpEntry(comp.id, kind, "offspring_count 0 never spawns"))
        elif kind is MethodKind.MOVEMENT:
            if p.move_velocity and p.move_velocity > 0:
                program.methods.append(
                    MethodDef(
                        comp.id,
                        kind,
                        {
                            "move_direction": p.move_direction or 0.0,
                            "move_velocity": p.move_velocity,
                        },
                    )
                )
            else:
                program.noop_report.append(NoOpEntry(comp.id, kind, "move_velocity 0 keeps agents in place"))


def _compile_abiotic(comp: Component, program: SimProgram) -> None:
    p = comp.params
    assert isinstance(p, AbioticParams)
    if p.minimum_amount and p.minimum_amount > 0:
        program.methods.append(
            MethodDef(comp.id, MethodKind.ABIOTIC_REPLENISH, {"minimum_amount": p.minimum_amount})
        )
    else:
        program.noop_report.append(
            NoOpEntry(comp.id, MethodKind.ABIOTIC_REPLENISH, "minimum_amount 0 needs no replenishment")
        )


def _compile_relationship(rel: Relationship, breed_params: dict[str, BioticParams]) -> MethodDef:
    kind = _RELATIONSHIP_METHOD_KIND[rel.kind]
    params = {name: value for name, value in rel.own_params().items() if value is not None}
    if rel.kind is RelationshipKind.CONSUMES:
        # The consumer's assimilation efficiency scales what it keeps of
        # each transfer; copy it so the method is self-contained.
        source = breed_params.get(rel.source)
        efficiency = source.assimilation_efficiency if source is not None else 1.0
        params["assimilation_efficiency"] = efficiency if efficiency is not None else 1.0
    return MethodDef(rel.id, kind, params, source=rel.source, target=rel.target)
