#!/usr/bin/env python3
"""Record the service responses the browser UI is contract-tested against.

Fixtures are deterministic: session ids are pinned and the model id is a
content hash.  A pytest guard re-runs this builder and fails when the
checked-in fixtures drift from the service's actual responses.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

FIXTURES = ROOT / "frontend" / "fixtures"
SESSION_ID = "fixture-session"


def build_fixtures() -> dict[str, dict]:
    from fastapi.testclient import TestClient

    from pidl.api import create_app

    app = create_app()
    client = TestClient(app)
    out: dict[str, dict] = {}

    steel = json.loads((ROOT / "models" / "steelplant.json").read_text())
    upload = client.post("/models", json=steel).json()
    model_id = upload["model_id"]
    out["steelplant_upload"] = upload
    out["steelplant_graph"] = client.get(f"/models/{model_id}/graph").json()

    created = client.post("/sessions", json={"model_id": model_id}).json()
    sid = created["session_id"]
    out["steelplant_view_initial"] = created["view"]

    out["steelplant_whatif_sprayheader"] = client.post(
        f"/sessions/{sid}/whatif", json={"decision": "sprayHeader", "value": True}
    ).json()
    out["steelplant_whatif_dynamicjet"] = client.post(
        f"/sessions/{sid}/whatif", json={"decision": "dynamicJet", "value": True}
    ).json()

    out["steelplant_take_stainless"] = client.post(
        f"/sessions/{sid}/decisions", json={"decision": "stainlessSteel", "value": True}
    ).json()
    out["steelplant_view_after_retract"] = client.delete(
        f"/sessions/{sid}/decisions/stainlessSteel"
    ).json()["view"]

    error = client.post(
        f"/sessions/{sid}/decisions", json={"decision": "molder", "value": True}
    )
    out["error_not_visible"] = error.json()

    example4 = json.loads((ROOT / "models" / "example4.json").read_text())
    ex_id = client.post("/models", json=example4).json()["model_id"]
    out["example4_graph"] = client.get(f"/models/{ex_id}/graph").json()

    flipflop = json.loads((ROOT / "models" / "flipflop.json").read_text())
    ff_id = client.post("/models", json=flipflop).json()["model_id"]
    out["flipflop_graph"] = client.get(f"/models/{ff_id}/graph").json()

    return {name: _pin_session_ids(doc, sid) for name, doc in out.items()}


def _pin_session_ids(doc, real_id: str):
    text = json.dumps(doc)
    return json.loads(text.replace(real_id, SESSION_ID))


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, doc in build_fixtures().items():
        target = FIXTURES / f"{name}.json"
        target.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
