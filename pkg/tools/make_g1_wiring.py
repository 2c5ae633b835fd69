"""Write the shipped candidate wiring for G1/G6 (src/pdpmkit/data/g1_wiring.json).

Six hub gadgets {x_i, y_i, z_i} hang off the hub w, one edge w-z_i each.
Nine Q1 copies join odd gadgets (1, 3, 5) to even gadgets (2, 4, 6) like
K_{3,3}; every gadget vertex receives one Q1 port as a triple edge.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pdpmkit.constructions import q1  # noqa: E402
from pdpmkit.matching import enumerate_pm  # noqa: E402
from pdpmkit.multigraph import Multigraph, induced  # noqa: E402

ROLES = ("x", "y", "z")
ODD, EVEN = (1, 3, 5), (2, 4, 6)


def internal_matching(port: str) -> list[list[str]]:
    """First perfect matching of Q1 minus ``port`` that uses only parallel edges."""
    q = q1()
    p = q.vertex(port)
    sub, _ = induced(q, [i for i in range(q.n) if i != p])
    strong = Multigraph(sub.n, sub.labels, {k: m for k, m in sub.mult.items() if m >= 2})
    first = enumerate_pm(strong)[0]
    return sorted(sorted([sub.labels[e.u], sub.labels[e.v]]) for e in first)


def main() -> None:
    hubs = ["w"] + [f"{r}{i}" for i in range(1, 7) for r in ROLES]
    gadgets, edges, matching = [], [], [["w'", "w''"]]
    for i in range(1, 7):
        edges += [["w", f"z{i}", 1], [f"x{i}", f"y{i}", 2], [f"x{i}", f"z{i}", 1], [f"y{i}", f"z{i}", 1]]
    for a, i in enumerate(ODD):
        for b, j in enumerate(EVEN):
            name = f"Q{i}{j}"
            gadgets.append(name)
            odd_role = ROLES[(b - a) % 3]
            even_role = ROLES[(a - b) % 3]
            edges.append([f"{name}.v1^1", f"{odd_role}{i}", 3])
            edges.append([f"{name}.v1^2", f"{even_role}{j}", 3])
            matching.append([f"{odd_role}{i}", f"{name}.v1^1"])
    for j in EVEN:
        matching += [[f"x{j}", f"y{j}"], [f"z{j}'", f"z{j}''"]]
    expansions = [
        {"vertex": f"z{j}", "first": {"w": 1, f"x{j}": 1, f"y{j}": 1}} for j in EVEN
    ] + [{"vertex": "w", "first": {"z1": 1, "z3": 1, "z5": 1}}]
    data = {
        "name": "G1 candidate: hub w, six gadgets, nine Q1 copies on K33",
        "degree": 6,
        "hubs": hubs,
        "gadgets": gadgets,
        "edges": edges,
        "expansions": expansions,
        "matching": matching,
        "gadget_matchings": {p: internal_matching(p) for p in ("v1^1", "v1^2")},
    }
    out = Path(__file__).resolve().parents[1] / "src" / "pdpmkit" / "data" / "g1_wiring.json"
    out.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
