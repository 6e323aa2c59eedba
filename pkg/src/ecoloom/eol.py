"""Client for species search and trait lookup against Encyclopedia of Life.

The lookup flow has five steps: the user queries a species name
(scientific or common), the search API returns candidate species, the
user picks one, the trait service returns its recorded traits, and the
traits are mapped onto suggested biotic parameters the user may still
edit. Trait enrichment is strictly optional: a simulation never depends
on this module.

The client has two modes. Live mode issues HTTPS requests against the
base URL (``ECOLOOM_EOL_BASE_URL`` environment variable, falling back to
the public endpoint). Fixture mode replays recorded response bodies from
a directory, byte-for-byte, so tests and offline work never touch the
network. Recorded fixtures for a handful of species ship with the
package.
"""

from __future__ import annotations

import json
import os
import statistics
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import httpx

from .model import BioticParams

__all__ = [
    "SpeciesCandidate",
    "TraitRecord",
    "EolError",
    "EolNetworkError",
    "EolResponseError",
    "EolClient",
    "traits_to_parameters",
    "bundled_fixture_dir",
]

DEFAULT_BASE_URL = "https://eol.org/api"
BASE_URL_ENV = "ECOLOOM_EOL_BASE_URL"
FIXTURES_ENV = "ECOLOOM_EOL_FIXTURES"


@dataclass(frozen=True)
class SpeciesCandidate:
    taxon_id: str
    scientific_name: str
    common_name: str | None = None


@dataclass(frozen=True)
class TraitRecord:
    predicate: str
    value: float
    units: str
    source: str = ""


class EolError(Exception):
    """Base failure talking to the species database."""


class EolNetworkError(EolError):
    """The service could not be reached (or no fixture was recorded)."""


class EolResponseError(EolError):
    """The service answered with something unparseable."""


# Unit conversions by trait dimension. Time converts to months (one
# month is thirty days), mass to kilograms; divisions keep decimal
# values exact under IEEE rounding.
_TIME_FACTORS = {
    "years": ("mul", 12.0),
    "year": ("mul", 12.0),
    "yr": ("mul", 12.0),
    "months": ("mul", 1.0),
    "month": ("mul", 1.0),
    "weeks": ("mul", 7.0 / 30.0),
    "days": ("div", 30.0),
    "day": ("div", 30.0),
}
_MASS_FACTORS = {
    "kg": ("mul", 1.0),
    "kilograms": ("mul", 1.0),
    "kilogram": ("mul", 1.0),
    "g": ("div", 1000.0),
    "grams": ("div", 1000.0),
    "gram": ("div", 1000.0),
    "mg": ("div", 1_000_000.0),
}
_COUNT_UNITS = {"", "individuals", "offspring", "count", "one unit"}


def _load_trait_map() -> dict[str, tuple[str, str]]:
    text = resources.files("ecoloom").joinpath("data/trait_map.json").read_text("utf-8")
    table = json.loads(text)
    out: dict[str, tuple[str, str]] = {}
    for entry in table["mappings"]:
        if entry["parameter"] is not None:
            out[entry["predicate"].strip().lower()] = (entry["parameter"], entry["dimension"])
    return out


_TRAIT_MAP = _load_trait_map()


def _convert(value: float, units: str, dimension: str) -> float | None:
    key = units.strip().lower()
    if dimension == "time":
        rule = _TIME_FACTORS.get(key)
    elif dimension == "mass":
        rule = _MASS_FACTORS.get(key)
    else:
        return value if key in _COUNT_UNITS else None
    if rule is None:
        return None
    op, factor = rule
    return value * factor if op == "mul" else value / factor


def traits_to_parameters(traits: list[TraitRecord]) -> tuple[BioticParams, list[str]]:
    """Map trait records onto suggested biotic parameters.

    Pure and network-free. Records whose predicate is unmapped are
    ignored; records whose units contradict the trait's dimension are
    skipped with a warning. Multiple usable records for one parameter
    reduce to their median. Parameters without any usable record stay
    unset, for apply_defaults to fill later.
    """
    collected: dict[str, list[float]] = {}
    warnings: list[str] = []
    for record in traits:
        mapped = _TRAIT_MAP.get(record.predicate.strip().lower())
        if mapped is None:
            continue
        parameter, dimension = mapped
        converted = _convert(record.value, record.units, dimension)
        if converted is None:
            warnings.append(
                f"skipped {record.predicate!r}: units {record.units!r} do not fit {dimension}"
            )
            continue
        collected.setdefault(parameter, []).append(converted)
    values = {name: statistics.median(records) for name, records in collected.items()}
    return BioticParams(**values), warnings


class EolClient:
    """Species search and trait retrieval, live or from recorded fixtures."""

    def __init__(
        self,
        base_url: str | None = None,
        fixture_dir: str | Path | None = None,
        timeout: float = 10.0,
    ):
        env_fixtures = os.environ.get(FIXTURES_ENV)
        if fixture_dir is None and env_fixtures:
            fixture_dir = env_fixtures
        self.fixture_dir = Path(fixture_dir) if fixture_dir is not None else None
        self.base_url = (base_url or os.environ.get(BASE_URL_ENV) or DEFAULT_BASE_URL).rstrip("/")
        self.timeout = timeout

    # -- transport ---------------------------------------------------------

    def _fixture_body(self, name: str) -> str:
        assert self.fixture_dir is not None
        path = self.fixture_dir / name
        try:
            return path.read_text("utf-8")
        except FileNotFoundError:
            raise EolNetworkError(f"no recorded fixture {name!r} in {self.fixture_dir}") from None

    def _get(self, path: str, params: dict[str, str], fixture_name: str) -> str:
        if self.fixture_dir is not None:
            return self._fixture_body(fixture_name)
        try:
            response = httpx.get(f"{self.base_url}{path}", params=params, timeout=self.timeout)
            response.raise_for_status()
        except httpx.HTTPError as exc:
            raise EolNetworkError(f"species service request failed: {exc}") from exc
        return response.text

    # -- operations --------------------------------------------------------

    def search_species(self, query: str) -> list[SpeciesCandidate]:
        """Candidates matching a scientific or common name, service order."""
        if not query.strip():
            raise ValueError("query must be non-empty")
        body = self._get(
            "/search/1.0.json", {"q": query}, f"search__{_fixture_slug(query)}.json"
        )
        try:
            payload = json.loads(body)
            results = payload["results"]
            candidates = []
            for item in results:
                common = (item.get("content") or "").split(";")[0].strip() or None
                candidates.append(
                    SpeciesCandidate(
                        taxon_id=str(item["id"]),
                        scientific_name=item["title"],
                        common_name=common,
                    )
                )
            return candidates
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise EolResponseError(f"malformed search response: {exc}") from exc

    def fetch_traits(self, taxon_id: str) -> list[TraitRecord]:
        """Recorded trait data for one taxon; may be empty."""
        body = self._get(
            f"/traits/{taxon_id}.json", {}, f"traits__{_fixture_slug(taxon_id)}.json"
        )
        try:
            payload = json.loads(body)
            return [
                TraitRecord(
                    predicate=str(item["predicate"]),
                    value=float(item["value"]),
                    units=str(item.get("units", "")),
                    source=str(item.get("source", "")),
                )
                for item in payload["traits"]
            ]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise EolResponseError(f"malformed trait response: {exc}") from exc

    def suggest_parameters(self, query: str) -> tuple[SpeciesCandidate, BioticParams, list[str]]:
        """Search, take the top candidate, and map its traits to parameters."""
        candidates = self.search_species(query)
        if not candidates:
            raise EolError(f"no species match {query!r}")
        top = candidates[0]
        params, warnings = traits_to_parameters(self.fetch_traits(top.taxon_id))
        return top, params, warnings


def _fixture_slug(text: str) -> str:
    out = []
    for ch in text.strip().lower():
        out.append(ch if ch.isalnum() else "-")
    return "".join(out).strip("-") or "x"


def bundled_fixture_dir() -> Path:
    """Directory of the recorded responses shipped with the package."""
    return Path(str(resources.files("ecoloom").joinpath("data/eol_fixtures")))
