"""Engine invariants under randomized models and configurations."""

from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from ecoloom.compiler import MethodKind, compile_model
from ecoloom.engine import EngineConfig, init_world, run, tick
from strategies import valid_models

_seeds = st.integers(min_value=0, max_value=2**63 - 1)


def _world_invariants(world, config):
    grid = config.grid_size
    live = 0
    for agent in world.agents:
        assert 0.0 <= agent.x < grid and 0.0 <= agent.y < grid
        live += agent.alive
    assert live <= config.max_agents
    for record_value in world.record().counts.values():
        assert record_value >= 0
    for level in world.pools.values():
        assert level >= 0
    for acc in world.produce_accumulators.values():
        assert acc >= 0


@settings(max_examples=40, deadline=None)
@given(valid_models(), _seeds, st.integers(min_value=1, max_value=8))
def test_torus_cap_and_non_negativity(model, seed, grid):
    program = compile_model(model)
    config = EngineConfig(
        rng_seed=seed,
        grid_size=grid,
        max_agents=400,
        seconds_per_tick=1.0,
        wiggle_degrees=180.0,
    )
    total_start = sum(int(round(b.params.starting_population or 0)) for b in program.breeds)
    if total_start > config.max_agents:
        return
    world = init_world(program, config)
    _world_invariants(world, config)
    for _ in range(15):
        tick(world, program)
        _world_invariants(world, config)


@settings(max_examples=25, deadline=None)
@given(valid_models(), _seeds)
def test_identical_runs_are_identical(model, seed):
    program = compile_model(model)
    config = EngineConfig(rng_seed=seed, max_ticks=10, max_agents=500, seconds_per_tick=1.0)
    if sum(int(round(b.params.starting_population or 0)) for b in program.breeds) > 500:
        return
    first = run(program, config)
    second = run(program, config)
    assert [r.counts for r in first.records] == [r.counts for r in second.records]
    assert first.to_csv() == second.to_csv()


@settings(max_examples=30, deadline=None)
@given(valid_models(), _seeds)
def test_live_age_never_exceeds_lifespan(model, seed):
    program = compile_model(model)
    limits = {
        b.component_id: b.params.lifespan
        for b in program.breeds
        if b.params.lifespan and b.params.lifespan > 0
    }
    config = EngineConfig(rng_seed=seed, max_agents=400, seconds_per_tick=1.0)
    if sum(int(round(b.params.starting_population or 0)) for b in program.breeds) > 400:
        return
    world = init_world(program, config)
    for _ in range(12):
        tick(world, program)
        for agent in world.agents:
            if agent.alive and agent.breed in limits:
                assert agent.age <= limits[agent.breed]


@settings(max_examples=30, deadline=None)
@given(_seeds)
def test_consumption_totals_balance_with_full_efficiency(seed):
    # With efficiency 1.0 and no other biomass flows, consumption moves
    # biomass around without creating or destroying it.
    from ecoloom.model import Component, ConceptualModel, Relationship, apply_defaults

    model = apply_defaults(
        ConceptualModel(
            id="m", name="m",
            components=[
                Component.biotic("a", "A", body_mass=8, starting_population=5,
                                 assimilation_efficiency=1.0),
                Component.biotic("b", "B", body_mass=6, starting_population=5),
            ],
            relationships=[
                Relationship.consumes("r", "a", "b",
                                      interaction_probability=0.7, consumption_rate=0.3),
            ],
        )
    )
    program = compile_model(model)
    world = init_world(program, EngineConfig(rng_seed=seed, grid_size=4))
    total = sum(agent.carbon_biomass for agent in world.agents)
    for _ in range(10):
        tick(world, program)
        now = sum(agent.carbon_biomass for agent in world.agents if agent.alive)
        assert abs(now - total) < 1e-9


def test_boosted_spawns_respect_cap():
    from ecoloom.model import Component, ConceptualModel, Relationship, apply_defaults

    model = apply_defaults(
        ConceptualModel(
            id="m", name="m",
            components=[
                Component.biotic("helper", "Helper", starting_population=5),
                Component.biotic("crop", "Crop", starting_population=10,
                                 minimum_population=500),
            ],
            relationships=[
                Relationship.affects("r", "helper", "crop",
                                     interaction_probability=1.0, growth_rate=5.0),
            ],
        )
    )
    program = compile_model(model)
    config = EngineConfig(rng_seed=3, max_agents=60)
    world = init_world(program, config)
    for _ in range(10):
        tick(world, program)
        assert world.live_count <= 60
