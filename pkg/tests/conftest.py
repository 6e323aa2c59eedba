"""Shared fixtures: the reference wolf-sheep-grass model."""

from __future__ import annotations

import pytest

from ecoloom.model import Component, ConceptualModel, Relationship, apply_defaults


def wolf_sheep_grass(**overrides) -> ConceptualModel:
    """The documented reference parameterization: wolves hunt sheep, sheep
    graze grass; lifespans 180/252/120 months, masses 30/19.66/5 kg,
    starting populations 200/1200/1000, grass floor 1000."""
    model = ConceptualModel(
        id="wolf-sheep-grass",
        name="Wolf Sheep Grass",
        components=[
            Component.biotic(
                "wolf", "Wolf",
                lifespan=180, body_mass=30, starting_population=200,
                offspring_count=5, reproductive_maturity=30,
                reproductive_interval=12, minimum_population=0,
            ),
            Component.biotic(
                "sheep", "Sheep",
                lifespan=252, body_mass=19.66, starting_population=1200,
                offspring_count=1, reproductive_maturity=24,
                reproductive_interval=12, minimum_population=0,
            ),
            Component.biotic(
                "grass", "Grass",
                lifespan=120, body_mass=5, starting_population=1000,
                offspring_count=0, reproductive_maturity=0,
                reproductive_interval=0, minimum_population=1000,
            ),
        ],
        relationships=[
            Relationship.consumes(
                "wolf-eats-sheep", "wolf", "sheep",
                interaction_probability=0.1, consumption_rate=0.2,
            ),
            Relationship.consumes(
                "sheep-eats-grass", "sheep", "grass",
                interaction_probability=0.5, consumption_rate=0.2,
            ),
        ],
    )
    return apply_defaults(model)


@pytest.fixture
def reference_model() -> ConceptualModel:
    return wolf_sheep_grass()
