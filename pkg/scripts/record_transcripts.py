#!/usr/bin/env python3
"""Record golden protocol transcripts for the bundled demo graphs.

Each transcript drives a fresh session store, so replays must match
byte for byte. Output lands in frontend/fixtures/transcripts/.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from transvect.protocol import SessionStore, dumps, handle_request  # noqa: E402

DATA = ROOT / "src" / "transvect" / "data"
OUT = ROOT / "frontend" / "fixtures" / "transcripts"


def load_graph(name: str) -> dict:
    with open(DATA / f"{name}.json", "r", encoding="utf-8") as fh:
        return json.load(fh)


def scenario(name: str, lamps: list[int], extra_steps: list[dict]) -> dict:
    graph = load_graph(name)
    requests = [{"op": "new", "graph": graph, "lamps": lamps}] + extra_steps
    store = SessionStore()
    steps = []
    for request in requests:
        response = handle_request(store, request)
        steps.append({"request": request, "response": response})
    return {"name": name, "graph": graph, "steps": steps}


SCENARIOS = [
    (
        "k2",
        [1, 0],
        [
            {"op": "play", "session": "s1", "vertex": 0},
            {"op": "reachable", "session": "s1", "target": [0, 1]},
            {"op": "undo", "session": "s1"},
            {"op": "reachable", "session": "s1", "target": [0, 0]},
            {"op": "min_lit", "session": "s1"},
            {"op": "classify", "session": "s1"},
        ],
    ),
    (
        "p3",
        [0, 1, 0],
        [
            {"op": "play", "session": "s1", "vertex": 1},
            {"op": "play", "session": "s1", "vertex": 0},
            {"op": "undo", "session": "s1"},
            {"op": "min_lit", "session": "s1"},
            {"op": "reachable", "session": "s1", "target": [1, 1, 1]},
            {"op": "classify", "session": "s1"},
        ],
    ),
    (
        "c4",
        [1, 1, 0, 0],
        [
            {"op": "play", "session": "s1", "vertex": 0},
            {"op": "play", "session": "s1", "vertex": 3},
            {"op": "reachable", "session": "s1", "target": [0, 0, 1, 1]},
            {"op": "undo", "session": "s1"},
            {"op": "min_lit", "session": "s1"},
            {"op": "classify", "session": "s1"},
        ],
    ),
    (
        "e6",
        [1, 0, 0, 0, 0, 0],
        [
            {"op": "play", "session": "s1", "vertex": 0},
            {"op": "reachable", "session": "s1", "target": [0, 1, 0, 0, 0, 0]},
            {"op": "reachable", "session": "s1", "target": [1, 1, 1, 1, 1, 1]},
            {"op": "min_lit", "session": "s1"},
            {"op": "classify", "session": "s1"},
        ],
    ),
    (
        "two_component",
        [1, 0, 1, 0],
        [
            {"op": "play", "session": "s1", "vertex": 0},
            {"op": "reachable", "session": "s1", "target": [0, 1, 0, 1]},
            {"op": "reachable", "session": "s1", "target": [1, 0, 0, 0]},
            {"op": "undo", "session": "s1"},
            {"op": "min_lit", "session": "s1"},
            {"op": "classify", "session": "s1"},
        ],
    ),
]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, lamps, steps in SCENARIOS:
        transcript = scenario(name, lamps, steps)
        path = OUT / f"{name}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(transcript, fh, indent=1, sort_keys=True)
            fh.write("\n")
        print(f"wrote {path} ({len(transcript['steps'])} steps)")
    # sanity: replay byte-identically right away
    for name, lamps, steps in SCENARIOS:
        with open(OUT / f"{name}.json", "r", encoding="utf-8") as fh:
            transcript = json.load(fh)
        store = SessionStore()
        for step in transcript["steps"]:
            got = dumps(handle_request(store, step["request"]))
            want = dumps(step["response"])
            assert got == want, (name, step["request"], got, want)
    print("replay check passed")


if __name__ == "__main__":
    main()
