"""Species lookup client: fixture replay, trait mapping, unit conversion."""

from __future__ import annotations

import json

import pytest

from ecoloom.eol import (
    EolClient,
    EolNetworkError,
    EolResponseError,
    TraitRecord,
    bundled_fixture_dir,
    traits_to_parameters,
)


@pytest.fixture
def client() -> EolClient:
    return EolClient(fixture_dir=bundled_fixture_dir())


def test_search_gray_wolf_returns_canis_lupus(client):
    candidates = client.search_species("gray wolf")
    names = [c.scientific_name for c in candidates]
    assert "Canis lupus" in names
    top = candidates[0]
    assert top.taxon_id == "328607"
    assert top.common_name == "gray wolf"


def test_search_nonsense_returns_empty_list(client):
    assert client.search_species("no such creature") == []


def test_fetch_traits_includes_body_mass_and_lifespan(client):
    traits = client.fetch_traits("328607")
    predicates = {t.predicate for t in traits}
    assert "body mass" in predicates and "life span" in predicates
    units = {t.predicate: t.units for t in traits}
    assert units["life span"] == "years"  # units preserved verbatim


def test_fixture_replay_is_stable(client):
    assert client.search_species("gray wolf") == client.search_species("gray wolf")
    assert client.fetch_traits("328607") == client.fetch_traits("328607")


def test_fixture_parse_matches_recorded_bytes(client):
    recorded = json.loads(
        (bundled_fixture_dir() / "search__gray-wolf.json").read_text("utf-8")
    )
    parsed = client.search_species("gray wolf")
    assert [c.taxon_id for c in parsed] == [str(r["id"]) for r in recorded["results"]]


def test_missing_fixture_reported_as_network_error(client):
    with pytest.raises(EolNetworkError, match="fixture"):
        client.search_species("never recorded query")


def test_malformed_fixture_reported_distinctly(tmp_path):
    (tmp_path / "search__broken.json").write_text("{not json", "utf-8")
    client = EolClient(fixture_dir=tmp_path)
    with pytest.raises(EolResponseError):
        client.search_species("broken")


def test_unreachable_service_is_network_error():
    client = EolClient(base_url="http://127.0.0.1:9", timeout=0.2)
    with pytest.raises(EolNetworkError):
        client.search_species("gray wolf")


def test_empty_query_rejected(client):
    with pytest.raises(ValueError):
        client.search_species("   ")


# -- trait mapping -------------------------------------------------------------


def test_lifespan_years_convert_to_months():
    params, warnings = traits_to_parameters(
        [TraitRecord("life span", 15, "years", "x")]
    )
    assert params.lifespan == 180.0
    assert warnings == []


def test_body_mass_grams_convert_to_kilograms():
    params, _ = traits_to_parameters([TraitRecord("body mass", 19660, "g", "x")])
    assert params.body_mass == 19.66


def test_empty_trait_list_gives_empty_partial_params():
    params, warnings = traits_to_parameters([])
    assert params.missing() == [f for f in params.__dataclass_fields__]
    assert warnings == []


def test_median_over_multiple_records():
    params, _ = traits_to_parameters(
        [
            TraitRecord("litter size", 4, "", "a"),
            TraitRecord("litter size", 6, "", "b"),
            TraitRecord("litter size", 5, "", "c"),
        ]
    )
    assert params.offspring_count == 5


def test_contradictory_units_skipped_with_warning():
    params, warnings = traits_to_parameters(
        [
            TraitRecord("body mass", 30000, "g", "a"),
            TraitRecord("body mass", 66, "lb", "b"),
        ]
    )
    assert params.body_mass == 30.0  # the convertible record survives alone
    assert any("lb" in w for w in warnings)


def test_days_convert_to_months():
    params, _ = traits_to_parameters(
        [TraitRecord("age at sexual maturity", 730, "days", "x")]
    )
    assert params.reproductive_maturity == pytest.approx(730 / 30)


def test_unmapped_predicates_ignored_silently():
    params, warnings = traits_to_parameters(
        [TraitRecord("body temperature", 38.7, "celsius", "x")]
    )
    assert params.missing() == [f for f in params.__dataclass_fields__]
    assert warnings == []


def test_suggest_parameters_five_step_flow(client):
    candidate, params, warnings = client.suggest_parameters("gray wolf")
    assert candidate.scientific_name == "Canis lupus"
    assert params.lifespan == 180.0  # 15 years
    assert params.body_mass == 30.0  # 30,000 g
    assert params.offspring_count == 5  # median litter size
    assert params.reproductive_interval == 12.0  # 1 year
    assert any("lb" in w for w in warnings)
