"""HTTP service: CRUD, validation-on-write, streamed runs, CSV, proxy."""

from __future__ import annotations

import json
import time

import pytest
from fastapi.testclient import TestClient

from ecoloom.eol import EolClient, bundled_fixture_dir
from ecoloom.serialize import model_to_document
from ecoloom.service import create_app
from ecoloom.store import FileStore, MemoryStore


@pytest.fixture
def client():
    app = create_app(store=MemoryStore(), eol=EolClient(fixture_dir=bundled_fixture_dir()))
    with TestClient(app) as test_client:
        yield test_client


def post_reference_model(client, reference_model) -> str:
    response = client.post("/models", json=model_to_document(reference_model))
    assert response.status_code == 201, response.text
    return response.json()["id"]


def wait_done(client, run_id, timeout=30.0) -> dict:
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        snapshot = client.get(f"/runs/{run_id}").json()
        if snapshot["status"] in ("done", "failed"):
            return snapshot
        time.sleep(0.05)
    raise AssertionError("run did not finish in time")


def sse_events(response):
    """Parse server-sent events into (event, data) pairs."""
    events = []
    name = "message"
    for line in response.iter_lines():
        if line.startswith("event: "):
            name = line[len("event: "):]
        elif line.startswith("data: "):
            events.append((name, json.loads(line[len("data: "):])))
            name = "message"
    return events


# -- models / projects ---------------------------------------------------------


def test_model_crud_round_trip(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    fetched = client.get(f"/models/{model_id}")
    assert fetched.status_code == 200
    assert fetched.json()["name"] == "Wolf Sheep Grass"

    doc = fetched.json()
    doc["name"] = "Renamed"
    assert client.put(f"/models/{model_id}", json=doc).status_code == 200
    assert client.get(f"/models/{model_id}").json()["name"] == "Renamed"

    assert client.delete(f"/models/{model_id}").status_code == 204
    assert client.get(f"/models/{model_id}").status_code == 404


def test_unknown_model_is_404(client):
    assert client.get("/models/nope").status_code == 404
    assert client.delete("/models/nope").status_code == 404


def test_invalid_model_is_never_persisted(client):
    doc = {
        "id": "bad1", "name": "bad",
        "components": [
            {"id": "a", "display_name": "A", "kind": "biotic",
             "params": {"assimilation_efficiency": 3}},
        ],
    }
    response = client.post("/models", json=doc)
    assert response.status_code == 422
    assert client.get("/models/bad1").status_code == 404
    assert client.get("/models").json() == []


def test_model_with_unknown_parameter_rejected(client):
    doc = {"id": "bad2", "name": "bad",
           "components": [{"id": "a", "display_name": "A", "kind": "biotic",
                           "params": {"charisma": 10}}]}
    response = client.post("/models", json=doc)
    assert response.status_code == 422
    assert "charisma" in response.text


def test_project_groups_models(client, reference_model):
    project = client.post("/projects", json={"name": "Ecology 101"}).json()
    doc = model_to_document(reference_model)
    doc["project_id"] = project["id"]
    model_id = client.post("/models", json=doc).json()["id"]
    fetched = client.get(f"/projects/{project['id']}").json()
    assert fetched["name"] == "Ecology 101"
    assert fetched["model_ids"] == [model_id]
    assert client.get("/projects/ghost").status_code == 404
    listed = client.get("/projects").json()
    assert [p["name"] for p in listed] == ["Ecology 101"]


def test_model_with_unknown_project_rejected(client, reference_model):
    doc = model_to_document(reference_model)
    doc["project_id"] = "ghost"
    assert client.post("/models", json=doc).status_code == 422


def test_copy_model(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    copy_id = client.post(f"/models/{model_id}/copy").json()["id"]
    assert copy_id != model_id
    copied = client.get(f"/models/{copy_id}").json()
    assert copied["name"] == "Wolf Sheep Grass (copy)"
    assert copied["components"] == client.get(f"/models/{model_id}").json()["components"]


# -- exemplars ------------------------------------------------------------------


def test_exemplars_listed_and_instantiable(client):
    listed = client.get("/exemplars").json()
    assert [e["id"] for e in listed] == [
        "logistic_growth", "exponential_growth", "predator_prey", "competitive_exclusion",
    ]
    created = client.post("/models/from-exemplar/predator_prey", json={"name": "My Wolves"})
    assert created.status_code == 201
    doc = client.get(f"/models/{created.json()['id']}").json()
    assert doc["name"] == "My Wolves"
    assert client.post("/models/from-exemplar/quadratic").status_code == 404


# -- compile --------------------------------------------------------------------


def test_compile_endpoint_netlogo_and_ir(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    text = client.post(f"/models/{model_id}/compile?emit=netlogo")
    assert text.status_code == 200
    assert "to consumes-wolf-sheep" in text.text
    ir = client.post(f"/models/{model_id}/compile?emit=ir")
    assert ir.status_code == 200
    assert len(ir.json()["breeds"]) == 3


# -- runs -----------------------------------------------------------------------


def run_config(ticks=5, seed=7) -> dict:
    return {"max_ticks": ticks, "rng_seed": seed}


def test_run_streams_records_in_order(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    run = client.post("/runs", json={"model_id": model_id, "config": run_config()})
    assert run.status_code == 201, run.text
    run_id = run.json()["id"]

    with client.stream("GET", f"/runs/{run_id}/stream") as response:
        events = sse_events(response)
    assert events[0][0] == "header"
    assert [c["component_id"] for c in events[0][1]["components"]] == ["wolf", "sheep", "grass"]
    records = [data for name, data in events if name == "message"]
    assert [r["tick"] for r in records] == list(range(6))  # ordered, no gaps
    assert records[0]["counts"] == {"wolf": 200, "sheep": 1200, "grass": 1000}
    assert events[-1][0] == "done"
    assert events[-1][1]["status"] == "done"


def test_identical_runs_stream_identical_sequences(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    captured = []
    for _ in range(2):
        run_id = client.post(
            "/runs", json={"model_id": model_id, "config": run_config(ticks=12, seed=3)}
        ).json()["id"]
        with client.stream("GET", f"/runs/{run_id}/stream") as response:
            captured.append([d for n, d in sse_events(response) if n == "message"])
    assert captured[0] == captured[1]


def test_csv_available_after_completion_and_matches_layout(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    run_id = client.post(
        "/runs", json={"model_id": model_id, "config": run_config(ticks=11, seed=7)}
    ).json()["id"]
    wait_done(client, run_id)
    response = client.get(f"/runs/{run_id}/csv")
    assert response.status_code == 200
    lines = response.text.splitlines()
    assert lines[0] == "Month,Wolf,Sheep,Grass"
    assert len(lines) == 13
    assert lines[1] == "0,200,1200,1000"


def test_run_with_bad_config_rejected(client, reference_model):
    model_id = post_reference_model(client, reference_model)
    response = client.post("/runs", json={"model_id": model_id,
                                          "config": {"unknown_option": 1}})
    assert response.status_code == 422
    response = client.post("/runs", json={"model_id": "ghost"})
    assert response.status_code == 404
    assert client.get("/runs/ghost/stream").status_code == 404


# -- species lookup proxy ----------------------------------------------------------


def test_eol_proxy_search_and_traits(client):
    found = client.get("/eol/search", params={"q": "gray wolf"})
    assert found.status_code == 200
    names = [c["scientific_name"] for c in found.json()["candidates"]]
    assert "Canis lupus" in names

    traits = client.get("/eol/traits", params={"taxon": "328607"})
    assert traits.status_code == 200
    body = traits.json()
    assert body["parameters"]["lifespan"] == 180.0
    assert body["parameters"]["body_mass"] == 30.0
    assert any("lb" in w for w in body["warnings"])


def test_eol_proxy_missing_fixture_maps_to_502(client):
    assert client.get("/eol/search", params={"q": "unrecorded beast"}).status_code == 502


# -- persistence backend ------------------------------------------------------------


def test_file_store_survives_app_restart(tmp_path, reference_model):
    store = FileStore(tmp_path)
    with TestClient(create_app(store=store)) as first:
        model_id = post_reference_model(first, reference_model)
    with TestClient(create_app(store=FileStore(tmp_path))) as second:
        assert second.get(f"/models/{model_id}").status_code == 200
