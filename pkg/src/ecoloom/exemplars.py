"""Shipped archetype models: ready-to-run starting points.

Four stereotypical ecological behaviors are bundled as model documents
plus the engine configuration under which each shows its signature
dynamics: logistic growth, exponential growth, predator-prey cycling,
and competitive exclusion. They double as fixtures and as user starting
points to copy and customize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .engine import EngineConfig
from .model import ConceptualModel
from .serialize import model_from_document

__all__ = ["ExemplarId", "ExemplarInfo", "list_exemplars", "load_exemplar", "exemplar_document"]


class ExemplarId(str, Enum):
    LOGISTIC_GROWTH = "logistic_growth"
    EXPONENTIAL_GROWTH = "exponential_growth"
    PREDATOR_PREY = "predator_prey"
    COMPETITIVE_EXCLUSION = "competitive_exclusion"


@dataclass(frozen=True)
class ExemplarInfo:
    id: ExemplarId
    title: str
    description: str


def _raw(exemplar_id: ExemplarId) -> dict:
    path = resources.files("ecoloom").joinpath(f"data/exemplars/{exemplar_id.value}.json")
    return json.loads(path.read_text("utf-8"))


def list_exemplars() -> list[ExemplarInfo]:
    out = []
    for exemplar_id in ExemplarId:
        raw = _raw(exemplar_id)
        out.append(ExemplarInfo(exemplar_id, raw["title"], raw["description"]))
    return out


def load_exemplar(exemplar_id: ExemplarId | str) -> tuple[ConceptualModel, EngineConfig]:
    """Load an exemplar model plus the configuration that exhibits its
    signature dynamics (seed, tick budget, rate normalization)."""
    exemplar_id = ExemplarId(exemplar_id)
    raw = _raw(exemplar_id)
    model = model_from_document(raw["model"])
    config = EngineConfig.from_dict(raw["config"])
    return model, config


def exemplar_document(exemplar_id: ExemplarId | str) -> dict:
    """The exemplar's raw model document (for export and instantiation)."""
    return _raw(ExemplarId(exemplar_id))["model"]
