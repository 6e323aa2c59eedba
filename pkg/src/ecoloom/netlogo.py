"""NetLogo-dialect source emission for compiled programs.

This backend projects a compiled program onto readable NetLogo-style
text: breed declarations, agent variables, startup/setup procedures, a
``go`` loop calling one procedure per scheduled method, and the method
procedures themselves. The internal engine interprets the compiled
program directly; this emitter never influences engine behavior.

Output is a pure function of the program: the same program always emits
byte-identical text (UTF-8, LF newlines). Procedures are named
``<kind>-<source>-<target>`` (relationship methods) or
``<kind>-<population>`` (component methods), lowercased with
non-alphanumerics replaced by hyphens.
"""

from __future__ import annotations

from .compiler import MethodDef, MethodKind, SimProgram
from .engine import EngineConfig

__all__ = ["emit_netlogo", "slugify"]


def slugify(text: str) -> str:
    out = []
    last_hyphen = True
    for ch in text.lower():
        if ch.isalnum():
            out.append(ch)
            last_hyphen = False
        elif not last_hyphen:
            out.append("-")
            last_hyphen = True
    slug = "".join(out).strip("-")
    return slug or "x"


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


class _Namer:
    """Stable, collision-free slugs for components and procedures."""

    def __init__(self) -> None:
        self._taken: set[str] = set()
        self._by_key: dict[str, str] = {}

    def name(self, key: str, base: str) -> str:
        if key in self._by_key:
            return self._by_key[key]
        slug = slugify(base)
        candidate = slug
        serial = 2
        while candidate in self._taken:
            candidate = f"{slug}-{serial}"
            serial += 1
        self._taken.add(candidate)
        self._by_key[key] = candidate
        return candidate


def emit_netlogo(program: SimProgram) -> str:
    cfg = program.config or EngineConfig()
    namer = _Namer()
    component_names: dict[str, str] = {}
    for breed in program.breeds:
        component_names[breed.component_id] = namer.name(breed.component_id, breed.display_name)
    for pool in program.pools:
        component_names[pool.component_id] = namer.name(pool.component_id, pool.display_name)

    agentset = {b.component_id: f"{component_names[b.component_id]}-agents" for b in program.breeds}
    pool_global = {p.component_id: f"{component_names[p.component_id]}-amount" for p in program.pools}

    proc_namer = _Namer()
    proc_names: dict[int, str] = {}
    for i, method in enumerate(program.methods):
        if method.source is not None and method.target is not None:
            base = f"{method.kind.value}-{component_names[method.source]}-{component_names[method.target]}"
        else:
            base = f"{method.kind.value}-{component_names[method.origin]}"
        proc_names[i] = proc_namer.name(f"m{i}", base)

    accumulators = {
        m.origin: f"acc-{proc_names[i]}"
        for i, m in enumerate(program.methods)
        if m.kind is MethodKind.PRODUCE
    }
    boost_targets = sorted(
        {
            m.target
            for m in program.methods
            if m.kind is MethodKind.AFFECT and m.target in agentset
        },
        key=lambda cid: component_names[cid],
    )
    # Boosts recorded during a tick apply to the next tick's spawns, so
    # each boosted population carries an active and a pending global.
    boost_global = {cid: f"growth-boost-{component_names[cid]}" for cid in boost_targets}
    boost_pending = {cid: f"growth-boost-next-{component_names[cid]}" for cid in boost_targets}

    lines: list[str] = []
    push = lines.append
    push(";; ecological agent program (generated text backend)")
    push(";; dialect: NetLogo-style virtual machine subset; one procedure per compiled method")
    push("")
    for breed in program.breeds:
        name = component_names[breed.component_id]
        push(f"breed [{name}-agents {name}-agent]")
    if program.breeds:
        push("")
        push("turtles-own [age carbon-biomass]")
    globals_list = (
        ["max-agent-count"]
        + [pool_global[p.component_id] for p in program.pools]
        + [accumulators[origin] for origin in accumulators]
        + [name for cid in boost_targets for name in (boost_global[cid], boost_pending[cid])]
    )
    push("")
    push(f"globals [{' '.join(globals_list)}]")
    push("")

    # startup: model-parameter initialization
    push("to startup")
    push(f"  set max-agent-count {cfg.max_agents}")
    for pool in program.pools:
        push(f"  set {pool_global[pool.component_id]} {_fmt(pool.params.amount or 0.0)}")
    for origin in accumulators:
        push(f"  set {accumulators[origin]} 0")
    for cid in boost_targets:
        push(f"  set {boost_global[cid]} 1")
        push(f"  set {boost_pending[cid]} 1")
    push("end")
    push("")

    # setup: randomized placement of every starting agent
    push("to setup")
    push("  clear-all")
    push("  startup")
    for breed in program.breeds:
        population = int(round(breed.params.starting_population or 0.0))
        biomass = breed.params.carbon_biomass or 0.0
        if biomass <= 0:
            biomass = breed.params.body_mass or 0.0
        push(f"  create-{agentset[breed.component_id]} {population} [")
        push("    setxy random-xcor random-ycor")
        push("    set heading random-float 360")
        push("    set age 0")
        push(f"    set carbon-biomass {_fmt(biomass)}")
        push("  ]")
    push("  reset-ticks")
    push("end")
    push("")

    # go: one call per scheduled method, then the clock
    push("to go")
    push(f"  if ticks >= {cfg.max_ticks} [ stop ]")
    if program.breeds:
        push("  ask turtles [ set age age + 1 ]")
    for cid in boost_targets:
        push(f"  set {boost_global[cid]} {boost_pending[cid]}")
        push(f"  set {boost_pending[cid]} 1")
    for i in range(len(program.methods)):
        push(f"  {proc_names[i]}")
    push("  tick")
    push("end")
    push("")

    context = _Context(
        cfg, agentset, pool_global, accumulators, boost_global, boost_pending, component_names, program
    )
    for i, method in enumerate(program.methods):
        lines.extend(_emit_method(proc_names[i], method, context))
        push("")

    return "\n".join(lines)


class _Context:
    def __init__(
        self, cfg, agentset, pool_global, accumulators, boost_global, boost_pending, component_names, program
    ):
        self.cfg = cfg
        self.agentset = agentset
        self.pool_global = pool_global
        self.accumulators = accumulators
        self.boost_global = boost_global
        self.boost_pending = boost_pending
        self.component_names = component_names
        self.breed_params = {b.component_id: b.params for b in program.breeds}

    def initial_biomass(self, component_id: str) -> float:
        params = self.breed_params[component_id]
        biomass = params.carbon_biomass or 0.0
        return biomass if biomass > 0 else (params.body_mass or 0.0)


def _emit_method(name: str, method: MethodDef, ctx: _Context) -> list[str]:
    emitters = {
        MethodKind.LIFESPAN: _emit_lifespan,
        MethodKind.MINIMUM_POPULATION: _emit_minimum_population,
        MethodKind.BIOMASS: _emit_biomass,
        MethodKind.REPRODUCTION: _emit_reproduction,
        MethodKind.MOVEMENT: _emit_movement,
        MethodKind.CONSUME: _emit_consume,
        MethodKind.DESTROY: _emit_destroy,
        MethodKind.AFFECT: _emit_affect,
        MethodKind.PRODUCE: _emit_produce,
        MethodKind.ABIOTIC_REPLENISH: _emit_replenish,
    }
    body = emitters[method.kind](method, ctx)
    return [f"to {name}"] + [f"  {line}" for line in body] + ["end"]


def _emit_lifespan(method: MethodDef, ctx: _Context) -> list[str]:
    agents = ctx.agentset[method.origin]
    return [f"ask {agents} [ if age >= {_fmt(method.params['lifespan'])} [ die ] ]"]


def _emit_minimum_population(method: MethodDef, ctx: _Context) -> list[str]:
    agents = ctx.agentset[method.origin]
    minimum = _fmt(method.params["minimum_population"])
    boost = ctx.boost_global.get(method.origin)
    spawned = f"ceiling ({_fmt(ctx.cfg.replenish_fraction)} * shortfall)"
    if boost is not None:
        spawned = f"round ({spawned} * {boost})"
    return [
        f"let shortfall {minimum} - count {agents}",
        "if shortfall > 0 [",
        f"  let n min (list ({spawned}) (max-agent-count - count turtles))",
        f"  create-{agents} n [",
        "    setxy random-xcor random-ycor",
        "    set heading random-float 360",
        "    set age 0",
        f"    set carbon-biomass {_fmt(ctx.initial_biomass(method.origin))}",
        "  ]",
        "]",
    ]


def _emit_biomass(method: MethodDef, ctx: _Context) -> list[str]:
    agents = ctx.agentset[method.origin]
    delta = (
        method.params["photosynthesis_rate"] - method.params["respiratory_rate"]
    ) * ctx.cfg.seconds_per_tick * ctx.cfg.rate_scale
    return [
        f"ask {agents} [",
        f"  set carbon-biomass carbon-biomass + {_fmt(delta)}",
        "  if carbon-biomass <= 0 [ die ]",
        "]",
    ]


def _emit_reproduction(method: MethodDef, ctx: _Context) -> list[str]:
    agents = ctx.agentset[method.origin]
    maturity = _fmt(method.params["reproductive_maturity"])
    interval = _fmt(method.params["reproductive_interval"])
    count = f"{_fmt(method.params['offspring_count'])}"
    boost = ctx.boost_global.get(method.origin)
    if boost is not None:
        count = f"round ({count} * {boost})"
    return [
        f"ask {agents} [",
        f"  if age >= {maturity} and (age - {maturity}) mod {interval} = 0 [",
        f"    hatch min (list ({count}) (max-agent-count - count turtles)) [",
        "      set age 0",
        f"      set carbon-biomass {_fmt(ctx.initial_biomass(method.origin))}",
        "    ]",
        "  ]",
        "]",
    ]


def _emit_movement(method: MethodDef, ctx: _Context) -> list[str]:
    agents = ctx.agentset[method.origin]
    distance = min(
        method.params["move_velocity"] * ctx.cfg.seconds_per_tick / ctx.cfg.meters_per_cell,
        float(ctx.cfg.grid_size),
    )
    wiggle = ctx.cfg.wiggle_degrees
    return [
        f"ask {agents} [",
        f"  set heading {_fmt(method.params['move_direction'])}"
        f" + (random-float {_fmt(2 * wiggle)}) - {_fmt(wiggle)}",
        f"  fd {_fmt(distance)}",
        "]",
    ]


def _emit_consume(method: MethodDef, ctx: _Context) -> list[str]:
    source = ctx.agentset[method.source]
    target = ctx.agentset[method.target]
    probability = _fmt(method.params["interaction_probability"])
    rate = _fmt(method.params["consumption_rate"])
    efficiency = _fmt(method.params.get("assimilation_efficiency", 1.0))
    radius = _fmt(ctx.cfg.interaction_radius)
    return [
        f"ask {source} [",
        f"  let candidate min-one-of ({target} in-radius {radius}) [distance myself]",
        "  if candidate != nobody [",
        f"    if random-float 1.0 < {probability} [",
        f"      let transfer {rate} * [carbon-biomass] of candidate",
        "      ask candidate [ set carbon-biomass carbon-biomass - transfer ]",
        f"      set carbon-biomass carbon-biomass + (transfer * {efficiency})",
        "      if [carbon-biomass] of candidate <= 0 [ ask candidate [ die ] ]",
        "    ]",
        "  ]",
        "]",
    ]


def _emit_destroy(method: MethodDef, ctx: _Context) -> list[str]:
    source = ctx.agentset[method.source]
    probability = _fmt(method.params["interaction_probability"])
    rate = _fmt(method.params["destruction_rate"])
    if method.target in ctx.pool_global:
        pool = ctx.pool_global[method.target]
        return [
            f"ask {source} [",
            f"  if random-float 1.0 < {probability} [",
            f"    set {pool} {pool} - ({rate} * {pool})",
            "  ]",
            "]",
        ]
    target = ctx.agentset[method.target]
    radius = _fmt(ctx.cfg.interaction_radius)
    return [
        f"ask {source} [",
        f"  let candidate min-one-of ({target} in-radius {radius}) [distance myself]",
        "  if candidate != nobody [",
        f"    if random-float 1.0 < {probability} [",
        f"      ask candidate [ set carbon-biomass carbon-biomass - ({rate} * carbon-biomass) ]",
        "      if [carbon-biomass] of candidate <= 0 [ ask candidate [ die ] ]",
        "    ]",
        "  ]",
        "]",
    ]


def _emit_affect(method: MethodDef, ctx: _Context) -> list[str]:
    source = ctx.agentset[method.source]
    probability = _fmt(method.params["interaction_probability"])
    multiplier = _fmt(1.0 + method.params["growth_rate"])
    if method.target in ctx.pool_global:
        pool = ctx.pool_global[method.target]
        effect = f"set {pool} {pool} * {multiplier}"
    else:
        pending = ctx.boost_pending[method.target]
        effect = f"set {pending} {pending} * {multiplier}"
    return [
        f"ask {source} [",
        f"  if random-float 1.0 < {probability} [ {effect} ]",
        "]",
    ]


def _emit_produce(method: MethodDef, ctx: _Context) -> list[str]:
    source = ctx.agentset[method.source]
    acc = ctx.accumulators[method.origin]
    per_tick = method.params["production_rate"] * ctx.cfg.seconds_per_tick * ctx.cfg.rate_scale
    lines = [f"set {acc} {acc} + (count {source} * {_fmt(per_tick)})"]
    if method.target in ctx.pool_global:
        pool = ctx.pool_global[method.target]
        lines += [f"set {pool} {pool} + {acc}", f"set {acc} 0"]
    else:
        target = ctx.agentset[method.target]
        body = ctx.breed_params[method.target].body_mass or 0.0
        lines += [
            f"while [{acc} >= {_fmt(body)} and count turtles < max-agent-count] [",
            f"  create-{target} 1 [",
            "    setxy random-xcor random-ycor",
            "    set heading random-float 360",
            "    set age 0",
            f"    set carbon-biomass {_fmt(ctx.initial_biomass(method.target))}",
            "  ]",
            f"  set {acc} {acc} - {_fmt(body)}",
            "]",
        ]
    return lines


def _emit_replenish(method: MethodDef, ctx: _Context) -> list[str]:
    pool = ctx.pool_global[method.origin]
    minimum = _fmt(method.params["minimum_amount"])
    fraction = _fmt(ctx.cfg.replenish_fraction)
    return [
        f"if {pool} < {minimum} [",
        f"  set {pool} {pool} + {fraction} * ({minimum} - {pool})",
        "]",
    ]
