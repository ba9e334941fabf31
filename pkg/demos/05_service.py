"""The scene service, exercised in-process.

The HTTP service computes everything once at startup and then answers two
questions: what is in this trace (/api/meta), and what should the viewer
draw for this window (/api/scene). Mode selection follows the zoom level:
row windows at or under 64 rows get exact lines, wider ones get glyphs.

To run it for real:  traceglyph serve t.trace.json --port 8080
"""

import json

from fastapi.testclient import TestClient

from traceglyph import analyze_trace, gen_trace, ring_descriptor
from traceglyph.service import create_app

session = analyze_trace(gen_trace(ring_descriptor(1280, 3, 8), timesteps=2))
client = TestClient(create_app(session))

meta = client.get("/api/meta").json()
print("GET /api/meta ->")
print(json.dumps(meta, indent=2))

for rows in ("0:8", "0:64", "0:65", "0:1280"):
    scene = client.get(f"/api/scene?rows={rows}&w=960&h=600").json()
    detail = (
        f"{len(scene['lines'])} lines"
        if scene["mode"] == "partial"
        else f"{len(scene['glyphs'])} glyphs"
    )
    print(f"GET /api/scene?rows={rows} -> mode={scene['mode']:<8} {detail}")

forced = client.get("/api/scene?w=960&h=600&mode=full").json()
print(f"forced full mode -> {len(forced['lines'])} lines, "
      f"row height {forced['rects'][0]['h']} px")
