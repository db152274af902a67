import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from pidl.api import create_app

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def steel_doc():
    return json.loads((MODELS / "steelplant.json").read_text())


def upload(client, doc):
    r = client.post("/models", json=doc)
    assert r.status_code == 200, r.text
    return r.json()


def new_session(client, model_id):
    r = client.post("/sessions", json={"model_id": model_id})
    assert r.status_code == 200, r.text
    return r.json()


def test_health(client):
    assert client.get("/health").json()["status"] == "ok"


def test_upload_returns_analysis_summary(client, steel_doc):
    doc = upload(client, steel_doc)
    assert doc["analysis"]["states"] > 0
    assert doc["analysis"]["inconsistent"] > 0
    assert not doc["analysis"]["user_confluent"]


def test_upload_rejects_bad_model(client):
    r = client.post("/models", json={"decisions": [{"name": "d", "type": "maybe"}]})
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "bad_model" and "message" in body


def test_graph_document(client, steel_doc):
    model_id = upload(client, steel_doc)["model_id"]
    doc = client.get(f"/models/{model_id}/graph").json()
    assert {"vertices", "edges", "canonical_paths", "anomalies"} <= doc.keys()
    assert client.get("/models/nope/graph").status_code == 404


def test_session_flow(client, steel_doc):
    model_id = upload(client, steel_doc)["model_id"]
    created = new_session(client, model_id)
    sid = created["session_id"]
    view = created["view"]
    assert view["visible_decisions"] == ["dynamicJet", "sprayHeader", "stainlessSteel"]
    assert view["anomaly_overlay"]["inconsistent"] > 0

    r = client.post(
        f"/sessions/{sid}/decisions", json={"decision": "stainlessSteel", "value": True}
    )
    assert r.status_code == 200
    body = r.json()
    assert body["view"]["status"] == "inconsistent"
    assert body["trace"]["steps"]

    r = client.delete(f"/sessions/{sid}/decisions/stainlessSteel")
    assert r.status_code == 200
    assert r.json()["view"]["status"] == "ready"

    r = client.get(f"/sessions/{sid}/view")
    assert r.json()["visible_decisions"] == [
        "dynamicJet",
        "sprayHeader",
        "stainlessSteel",
    ]


def test_whatif_leaves_state_alone(client, steel_doc):
    model_id = upload(client, steel_doc)["model_id"]
    sid = new_session(client, model_id)["session_id"]
    before = client.get(f"/sessions/{sid}/view").json()
    r = client.post(
        f"/sessions/{sid}/whatif", json={"decision": "sprayHeader", "value": True}
    )
    assert r.status_code == 200
    assert r.json()["trace"]["terminal"]
    assert client.get(f"/sessions/{sid}/view").json() == before


def test_error_shapes(client, steel_doc):
    model_id = upload(client, steel_doc)["model_id"]
    sid = new_session(client, model_id)["session_id"]
    r = client.post(f"/sessions/{sid}/decisions", json={"decision": "molder", "value": True})
    assert r.status_code == 409
    assert r.json()["code"] == "not_visible"
    r = client.post(f"/sessions/{sid}/decisions", json={"decision": "nope", "value": True})
    assert r.status_code == 404
    r = client.delete(f"/sessions/{sid}/decisions/sprayHeader")
    assert r.status_code == 404
    assert r.json()["code"] == "not_taken"
    assert client.get("/sessions/ghost/view").status_code == 404


def test_concurrent_mutations_serialize(client, steel_doc):
    from concurrent.futures import ThreadPoolExecutor

    model_id = upload(client, steel_doc)["model_id"]
    sid = new_session(client, model_id)["session_id"]

    def take(_):
        return client.post(
            f"/sessions/{sid}/decisions",
            json={"decision": "sprayHeader", "value": True},
        ).status_code

    with ThreadPoolExecutor(max_workers=8) as pool:
        codes = sorted(pool.map(take, range(8)))
    assert codes.count(200) == 1
    assert all(c == 409 for c in codes if c != 200)
    view = client.get(f"/sessions/{sid}/view").json()
    assert view["status"] == "ready"
    assert [h["decision"] for h in view["history"]] == ["sprayHeader"]


def test_snapshot_persistence(tmp_path, steel_doc):
    from pidl.api import create_app

    client = TestClient(create_app(state_dir=str(tmp_path)))
    model_id = upload(client, steel_doc)["model_id"]
    sid = new_session(client, model_id)["session_id"]
    client.post(f"/sessions/{sid}/decisions", json={"decision": "dynamicJet", "value": True})
    snapshot = json.loads((tmp_path / f"{sid}.json").read_text())
    assert snapshot["history"] == [{"decision": "dynamicJet", "value": "true"}]


def test_raw_spec_session(client):
    doc = json.loads((MODELS / "example4.json").read_text())
    model_id = upload(client, doc)["model_id"]
    sid = new_session(client, model_id)["session_id"]
    r = client.post(f"/sessions/{sid}/decisions", json={"decision": "1", "value": None})
    assert r.status_code == 200
    body = r.json()
    assert body["trace"]["terminal"] and len(body["trace"]["steps"]) == 1
    assert body["view"]["status"] == "ready"
    assert body["view"]["visible_decisions"] == []
