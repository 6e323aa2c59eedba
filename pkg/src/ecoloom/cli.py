"""Command-line front door: validate, compile, run, export, lookup, serve.

Exit codes are stable: 0 success, 1 validation or compilation failure,
2 I/O error, 3 network error. Commands never mutate their input files.
Engine settings resolve lowest-to-highest precedence: built-in defaults,
then the --config JSON file, then individual flags.
"""

from __future__ import annotations

import json
import sys
from dataclasses import fields
from pathlib import Path

import click

from .compiler import CompileError, compile_model, program_to_document
from .engine import EngineConfig, EngineError, run as run_program
from .eol import EolClient, EolError, EolNetworkError
from .exemplars import ExemplarId, exemplar_document, list_exemplars, load_exemplar
from .model import ConceptualModel, validate_model
from .netlogo import emit_netlogo
from .serialize import ModelParseError, parse_model, serialize_model
from .series import render_svg

EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NETWORK = 3


def _fail(code: int, message: str) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text("utf-8")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
        raise AssertionError  # unreachable


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        click.echo(text, nl=False)
        return
    try:
        Path(path).write_text(text, "utf-8")
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")


def _detect_format(path: str, format_flag: str) -> str:
    if format_flag != "auto":
        return format_flag
    return "xml" if path.lower().endswith(".xml") else "json"


def _load_model(path: str, format_flag: str) -> ConceptualModel:
    text = _read_text(path)
    try:
        return parse_model(text, _detect_format(path, format_flag))
    except ModelParseError as exc:
        _fail(EXIT_VALIDATION, f"{path}: {exc}")
        raise AssertionError


def _engine_config(config_path: str | None, **flag_overrides) -> EngineConfig:
    values: dict = {}
    if config_path is not None:
        try:
            raw = json.loads(_read_text(config_path))
        except json.JSONDecodeError as exc:
            _fail(EXIT_VALIDATION, f"{config_path}: malformed config JSON: {exc}")
            raise AssertionError
        if not isinstance(raw, dict):
            _fail(EXIT_VALIDATION, f"{config_path}: config must be a JSON object")
        values.update(raw)
    values.update({k: v for k, v in flag_overrides.items() if v is not None})
    try:
        return EngineConfig.from_dict(values)
    except (EngineError, TypeError) as exc:
        _fail(EXIT_VALIDATION, f"invalid engine configuration: {exc}")
        raise AssertionError


_format_option = click.option(
    "--format", "format_flag", type=click.Choice(["auto", "json", "xml"]), default="auto",
    help="Model document format (default: by file extension).",
)


@click.group()
@click.version_option(package_name="ecoloom")
def main() -> None:
    """Model ecological systems, compile them, and simulate them."""


@main.command()
@click.argument("path", type=click.Path())
@_format_option
def validate(path: str, format_flag: str) -> None:
    """Validate a model document; exit 0 only if it is runnable."""
    model = _load_model(path, format_flag)
    report = validate_model(model)
    click.echo(report.summary())
    if not report.ok:
        sys.exit(EXIT_VALIDATION)


@main.command()
@click.argument("path", type=click.Path())
@_format_option
@click.option("--emit", type=click.Choice(["netlogo", "ir"]), default="netlogo",
              help="Artifact to emit: agent-program text or the compiled IR as JSON.")
@click.option("--out", type=click.Path(), default=None, help="Output file (default: stdout).")
def compile(path: str, format_flag: str, emit: str, out: str | None) -> None:
    """Compile a model and emit the requested artifact."""
    model = _load_model(path, format_flag)
    try:
        program = compile_model(model)
    except CompileError as exc:
        _fail(EXIT_VALIDATION, str(exc))
        raise AssertionError
    if emit == "netlogo":
        _write_text(out, emit_netlogo(program))
    else:
        _write_text(out, json.dumps(program_to_document(program), indent=2) + "\n")


@main.command()
@click.argument("path", type=click.Path())
@_format_option
@click.option("--ticks", type=int, default=None, help="Number of ticks to simulate.")
@click.option("--seed", type=int, default=None, help="Random seed.")
@click.option("--csv", "csv_out", type=click.Path(), default=None,
              help="Write the population table to this file (default: stdout).")
@click.option("--svg", "svg_out", type=click.Path(), default=None,
              help="Also write a line chart of the run.")
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Engine configuration JSON; flags override its values.")
def run(path, format_flag, ticks, seed, csv_out, svg_out, config_path) -> None:
    """Simulate a model and export the per-month population table."""
    model = _load_model(path, format_flag)
    config = _engine_config(config_path, max_ticks=ticks, rng_seed=seed)
    try:
        program = compile_model(model)
        series = run_program(program, config)
    except CompileError as exc:
        _fail(EXIT_VALIDATION, str(exc))
        raise AssertionError
    except EngineError as exc:
        _fail(EXIT_VALIDATION, f"engine rejected the run: {exc}")
        raise AssertionError
    _write_text(csv_out, series.to_csv())
    if svg_out is not None:
        _write_text(svg_out, render_svg(series))


@main.group()
def exemplar() -> None:
    """List or export the bundled archetype models."""


@exemplar.command(name="list")
def exemplar_list() -> None:
    for info in list_exemplars():
        click.echo(f"{info.id.value}: {info.title} - {info.description}")


@exemplar.command(name="export")
@click.argument("exemplar_id")
@click.option("--out", type=click.Path(), default=None, help="Output file (default: stdout).")
def exemplar_export(exemplar_id: str, out: str | None) -> None:
    try:
        ExemplarId(exemplar_id)
    except ValueError:
        _fail(EXIT_VALIDATION,
              f"unknown exemplar {exemplar_id!r}; one of "
              + ", ".join(e.value for e in ExemplarId))
    _write_text(out, json.dumps(exemplar_document(exemplar_id), indent=2) + "\n")


@exemplar.command(name="run")
@click.argument("exemplar_id")
@click.option("--seed", type=int, default=None)
@click.option("--csv", "csv_out", type=click.Path(), default=None)
def exemplar_run(exemplar_id: str, seed: int | None, csv_out: str | None) -> None:
    """Run an exemplar under its shipped configuration."""
    try:
        model, config = load_exemplar(exemplar_id)
    except ValueError:
        _fail(EXIT_VALIDATION, f"unknown exemplar {exemplar_id!r}")
        raise AssertionError
    if seed is not None:
        from dataclasses import replace

        config = replace(config, rng_seed=seed)
    series = run_program(compile_model(model), config)
    _write_text(csv_out, series.to_csv())


@main.command()
@click.argument("species")
@click.option("--fixtures", type=click.Path(), default=None,
              help="Replay recorded responses from this directory instead of the network.")
def lookup(species: str, fixtures: str | None) -> None:
    """Suggest biotic parameters for a species from its recorded traits."""
    client = EolClient(fixture_dir=fixtures)
    try:
        candidate, params, warnings = client.suggest_parameters(species)
    except EolNetworkError as exc:
        _fail(EXIT_NETWORK, str(exc))
        raise AssertionError
    except EolError as exc:
        _fail(EXIT_VALIDATION, str(exc))
        raise AssertionError
    click.echo(f"{candidate.scientific_name} (taxon {candidate.taxon_id})")
    suggested = {k: v for k, v in vars(params).items() if v is not None}
    if not suggested:
        click.echo("no mappable traits recorded")
    for name, value in suggested.items():
        click.echo(f"  {name}: {value:g}")
    for warning in warnings:
        click.echo(f"  note: {warning}", err=True)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8321, show_default=True)
@click.option("--data-dir", type=click.Path(), default=None,
              help="Persist models and projects here (default: in-memory).")
def serve(host: str, port: int, data_dir: str | None) -> None:
    """Start the HTTP service used by the web studio."""
    import uvicorn

    from .service import create_app
    from .store import FileStore, MemoryStore

    store = FileStore(data_dir) if data_dir else MemoryStore()
    uvicorn.run(create_app(store=store), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
