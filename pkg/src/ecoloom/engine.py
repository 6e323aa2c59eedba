"""Deterministic agent-based virtual machine for compiled programs.

Execution model
---------------
Time advances in clocked ticks; one tick is one month (thirty days).
Agents live on a square toroidal grid: positions stay in
``[0, grid_size)`` on both axes, and anything moving off one edge
reappears on the opposite edge. Per tick, every scheduled method runs in
program order, each processing live agents in ascending agent-id order;
processing is strictly sequential. Agents marked dead during a tick are
skipped by later methods of the same tick and removed when it ends.

All randomness comes from one seeded generator consumed in
schedule-then-agent-id order, so identical (program, config) pairs
reproduce identical runs. Per-second rates convert to per-tick amounts
as ``rate * seconds_per_tick * rate_scale``; ``rate_scale`` exists
because source data mixes per-second units with month-long ticks.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, fields
from typing import Callable, Iterator

from .compiler import BreedDef, MethodDef, MethodKind, SimProgram
from .model import AbioticParams, BioticParams
from .series import PopulationRecord, TimeSeries

__all__ = ["EngineConfig", "Agent", "WorldState", "EngineError", "init_world", "tick", "run", "run_stream"]

SECONDS_PER_MONTH = 2_592_000.0  # 30 days


class EngineError(ValueError):
    """A program or configuration the engine cannot execute."""


@dataclass(frozen=True)
class EngineConfig:
    """Knobs of the virtual machine; defaults match the reference world."""

    grid_size: int = 32
    max_agents: int = 25_000
    seconds_per_tick: float = SECONDS_PER_MONTH
    meters_per_cell: float = 1.0
    interaction_radius: float = 1.0
    wiggle_degrees: float = 45.0
    replenish_fraction: float = 0.25
    max_ticks: int = 120
    rng_seed: int = 0
    rate_scale: float = 1.0

    def validate(self) -> None:
        if self.grid_size < 1:
            raise EngineError(f"grid_size must be >= 1, got {self.grid_size}")
        if self.max_agents < 1:
            raise EngineError(f"max_agents must be >= 1, got {self.max_agents}")
        for name in ("seconds_per_tick", "meters_per_cell", "interaction_radius", "wiggle_degrees", "rate_scale"):
            if getattr(self, name) < 0:
                raise EngineError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not 0.0 <= self.replenish_fraction <= 1.0:
            raise EngineError(f"replenish_fraction must be within [0, 1], got {self.replenish_fraction}")
        if self.max_ticks < 0:
            raise EngineError(f"max_ticks must be >= 0, got {self.max_ticks}")

    @classmethod
    def from_dict(cls, raw: dict) -> "EngineConfig":
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - names)
        if unknown:
            raise EngineError(f"unknown engine config key {unknown[0]!r}")
        config = cls(**raw)
        config.validate()
        return config


@dataclass(slots=True)
class Agent:
    id: int
    breed: str
    x: float
    y: float
    heading: float
    age: int
    carbon_biomass: float
    alive: bool = True


class WorldState:
    """Live simulation state; confined to one run, never shared."""

    def __init__(self, program: SimProgram, config: EngineConfig):
        self.config = config
        self.tick = 0
        self.rng = random.Random(config.rng_seed)
        self.agents: list[Agent] = []
        self.pools: dict[str, float] = {p.component_id: p.params.amount or 0.0 for p in program.pools}
        self.produce_accumulators: dict[str, float] = {
            m.origin: 0.0 for m in program.methods if m.kind is MethodKind.PRODUCE
        }
        self._columns = list(program.columns)
        self._by_breed: dict[str, list[Agent]] = {b.component_id: [] for b in program.breeds}
        self._breed_params: dict[str, BioticParams] = {b.component_id: b.params for b in program.breeds}
        self._pool_params: dict[str, AbioticParams] = {p.component_id: p.params for p in program.pools}
        self._live = 0
        self._deaths = 0
        self._next_id = 0
        # Growth boosts land in _boost_pending and take effect on the next
        # tick's spawn methods (interaction methods run after them).
        self._boost_active: dict[str, float] = {}
        self._boost_pending: dict[str, float] = {}

    @property
    def live_count(self) -> int:
        return self._live

    def live_breed_count(self, breed: str) -> int:
        return sum(1 for a in self._by_breed[breed] if a.alive)

    def record(self) -> PopulationRecord:
        counts: dict[str, float] = {}
        for component_id, _name in self._columns:
            if component_id in self._by_breed:
                counts[component_id] = float(self.live_breed_count(component_id))
            else:
                counts[component_id] = self.pools[component_id]
        return PopulationRecord(self.tick, counts)


def init_world(program: SimProgram, config: EngineConfig | None = None) -> WorldState:
    """Create the tick-0 world: agents placed uniformly at random.

    Breeds initialize in declaration order; each agent draws x, y and
    heading from the seeded generator. Initial carbon biomass is the
    carbon_biomass parameter when positive, otherwise body_mass.
    """
    cfg = config or program.config or EngineConfig()
    cfg.validate()
    total = sum(int(round(b.params.starting_population or 0.0)) for b in program.breeds)
    if total > cfg.max_agents:
        raise EngineError(
            f"total starting population {total} exceeds the {cfg.max_agents}-agent ceiling"
        )
    world = WorldState(program, cfg)
    for breed in program.breeds:
        for _ in range(int(round(breed.params.starting_population or 0.0))):
            _spawn_at_random(world, breed.component_id)
    return world


def tick(world: WorldState, program: SimProgram) -> PopulationRecord:
    """Advance the world by one tick and return the new record."""
    for agent in world.agents:
        if agent.alive:
            agent.age += 1
            # Live agents always hold a positive energy budget; an agent
            # spawned without one (zero body mass) cannot live.
            if agent.carbon_biomass <= 0.0:
                _kill(world, agent)
    world._boost_active = world._boost_pending
    world._boost_pending = {}
    for method in program.methods:
        _DISPATCH[method.kind](world, method)
    if world._deaths:
        world.agents = [a for a in world.agents if a.alive]
        for breed, members in world._by_breed.items():
            world._by_breed[breed] = [a for a in members if a.alive]
        world._deaths = 0
    world.tick += 1
    return world.record()


def run_stream(program: SimProgram, config: EngineConfig | None = None) -> Iterator[PopulationRecord]:
    """Run a program, yielding the initial record then one per tick.

    Each record is yielded before the next tick is computed, so callers
    can display progress live.
    """
    cfg = config or program.config or EngineConfig()
    world = init_world(program, cfg)
    yield world.record()
    while world.tick < cfg.max_ticks:
        yield tick(world, program)


def run(program: SimProgram, config: EngineConfig | None = None) -> TimeSeries:
    """Run a program to completion and collect the full time series."""
    series = TimeSeries(
        component_ids=[cid for cid, _ in program.columns],
        component_names=[name for _, name in program.columns],
    )
    series.records.extend(run_stream(program, config))
    return series


# ---------------------------------------------------------------------------
# Spawning and death
# ---------------------------------------------------------------------------


def _initial_biomass(params: BioticParams) -> float:
    biomass = params.carbon_biomass or 0.0
    if biomass > 0:
        return biomass
    return params.body_mass or 0.0


def _spawn(world: WorldState, breed: str, x: float, y: float, heading: float) -> Agent:
    params = world._breed_params[breed]
    agent = Agent(
        id=world._next_id,
        breed=breed,
        x=x,
        y=y,
        heading=heading,
        age=0,
        carbon_biomass=_initial_biomass(params),
    )
    world._next_id += 1
    world.agents.append(agent)
    world._by_breed[breed].append(agent)
    world._live += 1
    return agent


def _spawn_at_random(world: WorldState, breed: str) -> Agent:
    size = world.config.grid_size
    x = world.rng.random() * size
    y = world.rng.random() * size
    heading = world.rng.random() * 360.0
    return _spawn(world, breed, x, y, heading)


def _kill(world: WorldState, agent: Agent) -> None:
    if agent.alive:
        agent.alive = False
        world._live -= 1
        world._deaths += 1


def _room(world: WorldState) -> int:
    return world.config.max_agents - world._live


def _boosted(count: float, boost: float) -> int:
    # Spawn counts scale by the active growth boost; round half up so a
    # boost of exactly one leaves integer counts untouched.
    return int(math.floor(count * boost + 0.5))


def _wrap(value: float, size: float) -> float:
    value %= size
    # Float modulo of a tiny negative can round to size itself.
    if value >= size:
        value -= size
    return value if value >= 0.0 else 0.0


# ---------------------------------------------------------------------------
# Nearest-target search on the torus
# ---------------------------------------------------------------------------


class _CellIndex:
    """Agents bucketed by integer grid cell, for radius queries."""

    def __init__(self, agents: list[Agent], grid_size: int):
        self.grid_size = grid_size
        cells: dict[tuple[int, int], list[Agent]] = {}
        for agent in agents:
            if agent.alive:
                cells.setdefault((int(agent.x), int(agent.y)), []).append(agent)
        self.cells = cells

    def nearest_within(self, source: Agent, radius: float) -> Agent | None:
        """Nearest live agent within the torus radius, ties to lowest id."""
        g = self.grid_size
        half = g / 2.0
        reach = int(math.ceil(radius))
        limit = radius * radius
        cx, cy = int(source.x), int(source.y)
        best: Agent | None = None
        best_key = (limit, float("inf"))
        seen: set[tuple[int, int]] = set()
        for dx in range(-reach, reach + 1):
            for dy in range(-reach, reach + 1):
                cell = ((cx + dx) % g, (cy + dy) % g)
                if cell in seen:
                    continue
                seen.add(cell)
                for agent in self.cells.get(cell, ()):
                    if not agent.alive or agent.id == source.id:
                        continue
                    ddx = abs(agent.x - source.x)
                    if ddx > half:
                        ddx = g - ddx
                    ddy = abs(agent.y - source.y)
                    if ddy > half:
                        ddy = g - ddy
                    key = (ddx * ddx + ddy * ddy, float(agent.id))
                    if key <= best_key:
                        best_key = key
                        best = agent
        return best


# ---------------------------------------------------------------------------
# Per-method semantics
# ---------------------------------------------------------------------------


def _op_lifespan(world: WorldState, method: MethodDef) -> None:
    limit = method.params["lifespan"]
    if limit <= 0:  # 0 = no age limit
        return
    for agent in world._by_breed[method.origin]:
        if agent.alive and agent.age >= limit:
            _kill(world, agent)


def _op_minimum_population(world: WorldState, method: MethodDef) -> None:
    breed = method.origin
    minimum = method.params["minimum_population"]
    live = world.live_breed_count(breed)
    if live >= minimum:
        return
    deficit = minimum - live
    base = math.ceil(world.config.replenish_fraction * deficit)
    wanted = _boosted(base, world._boost_active.get(breed, 1.0))
    for _ in range(min(wanted, _room(world))):
        _spawn_at_random(world, breed)


def _op_biomass(world: WorldState, method: MethodDef) -> None:
    cfg = world.config
    delta = (
        method.params["photosynthesis_rate"] - method.params["respiratory_rate"]
    ) * cfg.seconds_per_tick * cfg.rate_scale
    for agent in world._by_breed[method.origin]:
        if not agent.alive:
            continue
        agent.carbon_biomass += delta
        if agent.carbon_biomass <= 0:
            _kill(world, agent)


def _op_reproduction(world: WorldState, method: MethodDef) -> None:
    maturity = method.params["reproductive_maturity"]
    interval = method.params["reproductive_interval"]
    count = method.params["offspring_count"]
    if interval <= 0 or count <= 0:  # 0 = reproduction disabled
        return
    per_parent = _boosted(count, world._boost_active.get(method.origin, 1.0))
    if per_parent <= 0:
        return
    # Snapshot: offspring created this tick do not reproduce this tick.
    for parent in list(world._by_breed[method.origin]):
        if not parent.alive or parent.age < maturity:
            continue
        if (parent.age - maturity) % interval != 0:
            continue
        for _ in range(per_parent):
            if world._live >= world.config.max_agents:
                return  # ceiling reached; spawning halts silently
            _spawn(world, method.origin, parent.x, parent.y, parent.heading)


def _op_movement(world: WorldState, method: MethodDef) -> None:
    cfg = world.config
    size = float(cfg.grid_size)
    distance = method.params["move_velocity"] * cfg.seconds_per_tick / cfg.meters_per_cell
    if distance <= 0:
        return
    distance = min(distance, size)
    direction = method.params["move_direction"]
    wiggle = cfg.wiggle_degrees
    for agent in world._by_breed[method.origin]:
        if not agent.alive:
            continue
        agent.heading = (direction + (world.rng.random() * 2.0 - 1.0) * wiggle) % 360.0
        # Compass heading: 0 = +y (north), 90 = +x (east).
        rad = math.radians(agent.heading)
        agent.x = _wrap(agent.x + distance * math.sin(rad), size)
        agent.y = _wrap(agent.y + distance * math.cos(rad), size)


def _op_consume(world: WorldState, method: MethodDef) -> None:
    probability = method.params["interaction_probability"]
    rate = method.params["consumption_rate"]
    efficiency = method.params.get("assimilation_efficiency", 1.0)
    radius = world.config.interaction_radius
    index = _CellIndex(world._by_breed[method.target], world.config.grid_size)
    for source in list(world._by_breed[method.source]):
        if not source.alive:
            continue
        target = index.nearest_within(source, radius)
        if target is None:
            continue
        if world.rng.random() < probability:
            transfer = rate * target.carbon_biomass
            target.carbon_biomass -= transfer
            source.carbon_biomass += transfer * efficiency
            if target.carbon_biomass <= 0:
                _kill(world, target)


def _op_destroy(world: WorldState, method: MethodDef) -> None:
    probability = method.params["interaction_probability"]
    rate = method.params["destruction_rate"]
    if method.target in world.pools:
        # Substance pools have no position, so range does not apply.
        for source in list(world._by_breed[method.source]):
            if source.alive and world.rng.random() < probability:
                world.pools[method.target] -= rate * world.pools[method.target]
        return
    radius = world.config.interaction_radius
    index = _CellIndex(world._by_breed[method.target], world.config.grid_size)
    for source in list(world._by_breed[method.source]):
        if not source.alive:
            continue
        target = index.nearest_within(source, radius)
        if target is None:
            continue
        if world.rng.random() < probability:
            target.carbon_biomass -= rate * target.carbon_biomass
            if target.carbon_biomass <= 0:
                _kill(world, target)


def _op_affect(world: WorldState, method: MethodDef) -> None:
    probability = method.params["interaction_probability"]
    multiplier = 1.0 + method.params["growth_rate"]
    if method.target in world.pools:
        for source in list(world._by_breed[method.source]):
            if source.alive and world.rng.random() < probability:
                world.pools[method.target] *= multiplier
        return
    # Biotic target: boost its next tick's spawn counts; successes compound.
    for source in list(world._by_breed[method.source]):
        if source.alive and world.rng.random() < probability:
            world._boost_pending[method.target] = (
                world._boost_pending.get(method.target, 1.0) * multiplier
            )


def _op_produce(world: WorldState, method: MethodDef) -> None:
    cfg = world.config
    per_source = method.params["production_rate"] * cfg.seconds_per_tick * cfg.rate_scale
    sources = world.live_breed_count(method.source)
    accumulated = world.produce_accumulators[method.origin] + per_source * sources
    if method.target in world.pools:
        # The accumulator drains fully into the pool every tick.
        world.pools[method.target] += accumulated
        accumulated = 0.0
    else:
        body = world._breed_params[method.target].body_mass or 0.0
        if body > 0:
            while accumulated >= body and _room(world) > 0:
                _spawn_at_random(world, method.target)
                accumulated -= body
    world.produce_accumulators[method.origin] = accumulated


def _op_abiotic_replenish(world: WorldState, method: MethodDef) -> None:
    minimum = method.params["minimum_amount"]
    amount = world.pools[method.origin]
    if amount < minimum:
        world.pools[method.origin] = amount + world.config.replenish_fraction * (minimum - amount)


_DISPATCH: dict[MethodKind, Callable[[WorldState, MethodDef], None]] = {
    MethodKind.LIFESPAN: _op_lifespan,
    MethodKind.MINIMUM_POPULATION: _op_minimum_population,
    MethodKind.BIOMASS: _op_biomass,
    MethodKind.REPRODUCTION: _op_reproduction,
    MethodKind.MOVEMENT: _op_movement,
    MethodKind.CONSUME: _op_consume,
    MethodKind.DESTROY: _op_destroy,
    MethodKind.AFFECT: _op_affect,
    MethodKind.PRODUCE: _op_produce,
    MethodKind.ABIOTIC_REPLENISH: _op_abiotic_replenish,
}
