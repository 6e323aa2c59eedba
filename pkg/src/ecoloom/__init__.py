"""EcoLoom: conceptual-modeling compiler and agent-based ecosystem simulator.

Authors draw a model as components (populations, substances) and
relationships (consumes, destroys, produces, affects) with quantitative
parameters. EcoLoom validates the model, compiles it into an executable
agent program, runs it deterministically on a toroidal grid, and streams
per-tick population records for analysis.

>>> from ecoloom import load_exemplar, compile_model, run
>>> model, config = load_exemplar("predator_prey")
>>> series = run(compile_model(model), config)
>>> print(series.to_csv().splitlines()[0])
Month,Wolf,Sheep,Grass
"""

from __future__ import annotations

__version__ = "0.1.0"

from .compiler import CompileError, MethodDef, MethodKind, SimProgram, compile_model
from .engine import Agent, EngineConfig, EngineError, WorldState, init_world, run, run_stream, tick
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
    Violation,
    apply_defaults,
    new_id,
    validate_model,
)
from .netlogo import emit_netlogo
from .serialize import ModelParseError, parse_model, serialize_model
from .series import PopulationRecord, TimeSeries, render_svg

__all__ = [
    "__version__",
    "AbioticParams",
    "Agent",
    "BioticParams",
    "CompileError",
    "Component",
    "ComponentKind",
    "ConceptualModel",
    "EngineConfig",
    "EngineError",
    "MethodDef",
    "MethodKind",
    "ModelParseError",
    "PopulationBasis",
    "PopulationRecord",
    "Relationship",
    "RelationshipKind",
    "SimProgram",
    "TimeSeries",
    "ValidationReport",
    "Violation",
    "WorldState",
    "apply_defaults",
    "compile_model",
    "emit_netlogo",
    "init_world",
    "load_exemplar",
    "new_id",
    "parse_model",
    "render_svg",
    "run",
    "run_stream",
    "serialize_model",
    "tick",
    "validate_model",
]


def load_exemplar(exemplar_id):  # re-exported here to keep the facade small
    from .exemplars import load_exemplar as _load

    return _load(exemplar_id)
