"""Record API responses as fixtures for the frontend contract tests.

Drives the real service over HTTP against the bundled corpus and saves the
exact response bytes under frontend/tests/fixtures/. The walk is the
standard biryani trip: six adds that activate the category on the first
item and the subcategory on the sixth, then an accept-all selection that
completes the best-matching recipe.
"""
from __future__ import annotations

import json
import sys
import threading
import time
import urllib.request
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import uvicorn

from basketchef import load_bundled_corpus
from basketchef.service import create_app

OUT = Path(__file__).resolve().parents[1] / "frontend" / "tests" / "fixtures"
PORT = 8777
BASE = f"http://127.0.0.1:{PORT}"

WALK = ["cardamom", "kewra water", "mace", "curd", "black peppercorn",
        "ginger garlic paste"]


def request(method: str, path: str, payload=None) -> bytes:
    data = None if payload is None else json.dumps(payload).encode()
    req = urllib.request.Request(
        BASE + path,
        data=data,
        method=method,
        headers={"Content-Type": "application/json"},
    )
    try:
        with urllib.request.urlopen(req) as response:
            return response.read()
    except urllib.error.HTTPError as err:
        return err.read()


def save(name: str, body: bytes) -> None:
    OUT.joinpath(name).write_bytes(body)
    print(f"  {name}: {len(body)} bytes")


def record() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    save("corpus.json", request("GET", "/corpus"))
    create = request("POST", "/sessions", {})
    save("session_create.json", create)
    sid = json.loads(create)["session_id"]

    for pos, item in enumerate(WALK, start=1):
        body = request("POST", f"/sessions/{sid}/items", {"item": item})
        if pos in (1, 6):
            save(f"add_{pos}.json", body)
    save("add_duplicate.json",
         request("POST", f"/sessions/{sid}/items", {"item": "cardamom"}))
    save("add_unknown.json",
         request("POST", f"/sessions/{sid}/items", {"item": "chicken b"}))

    save("state_after_walk.json", request("GET", f"/sessions/{sid}"))
    recs_body = request("GET", f"/sessions/{sid}/recommendations")
    save("recommendations.json", recs_body)

    top = json.loads(recs_body)["recommendations"][0]
    save("select_accept_all.json", request(
        "POST",
        f"/sessions/{sid}/select",
        {"dish": top["dish"], "recipe_id": top["recipe_id"],
         "accepted_items": top["missing_items"]},
    ))
    save("recommendations_after_accept.json",
         request("GET", f"/sessions/{sid}/recommendations"))


def main() -> None:
    app = create_app(load_bundled_corpus())
    config = uvicorn.Config(app, host="127.0.0.1", port=PORT, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    for _ in range(100):
        if server.started:
            break
        time.sleep(0.05)
    else:
        raise RuntimeError("server did not start")
    try:
        record()
    finally:
        server.should_exit = True
        thread.join(timeout=5)


if __name__ == "__main__":
    main()
