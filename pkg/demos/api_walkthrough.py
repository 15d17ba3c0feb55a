"""Drive the HTTP JSON API in-process, endpoint by endpoint.

The same app is served by `basketchef serve --corpus ... --port 8000`;
here it runs under a test client so the demo needs no open port.

Run:  python demos/api_walkthrough.py
"""
import json

from fastapi.testclient import TestClient

from basketchef import load_bundled_corpus
from basketchef.service import create_app

app = create_app(load_bundled_corpus())
client = TestClient(app)

print("GET /corpus")
summary = client.get("/corpus").json()
print(f"  {summary['vocabulary_size']} items, categories:",
      [c["name"] for c in summary["categories"]])

print("\nPOST /sessions  (theta override)")
session = client.post("/sessions", json={"theta": 3.0}).json()
sid = session["session_id"]
print(f"  session {sid}, config {session['state']['config']}")

print("\nPOST /sessions/{id}/items")
for item in ("long-grain rice", "kewra water", "mace", "curd",
             "black peppercorn"):
    body = client.post(f"/sessions/{sid}/items", json={"item": item}).json()
    report = body["report"]
    print(f"  + {item}: categories up {report['activated_categories']}, "
          f"subcategories up {report['activated_subcategories']}")

print("\ntypos get prefix suggestions:")
error = client.post(f"/sessions/{sid}/items", json={"item": "chicken b"}).json()
print(" ", json.dumps(error["error"]["details"]))

print("\nGET /sessions/{id}/recommendations")
recs = client.get(f"/sessions/{sid}/recommendations").json()["recommendations"]
for rec in recs[:3]:
    print(f"  {rec['dish']:22s} {rec['similarity']:.2f} missing "
          f"{len(rec['missing_items'])} items")

if recs:
    print("\nPOST /sessions/{id}/select  (accept every missing item)")
    top = recs[0]
    body = client.post(
        f"/sessions/{sid}/select",
        json={"dish": top["dish"], "recipe_id": top["recipe_id"],
              "accepted_items": top["missing_items"]},
    ).json()
    print(f"  basket now {len(body['state']['basket'])} items; "
          f"active: {body['state']['active_subcategories']}")

print("\nDELETE /sessions/{id}/items/{name}")
body = client.delete(f"/sessions/{sid}/items/mace").json()
print(f"  removed mace; deactivated: {body['report']['deactivated_subcategories']}")
