"""The Petersen graph and its six perfect matchings.

Vertex ids 0..4 are the outer cycle u1..u5 (u_i ~ u_{i+1}), ids 5..9 the
inner pentagram v1..v5 (v_i ~ v_{i+2}), and u_i v_i are the spokes.
``M0`` is the set of spokes and, for i >= 1, ``Mi`` is the other perfect
matching through the spoke u_i v_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .multigraph import GraphError, Multigraph

LABELS = tuple(f"u{i}" for i in range(1, 6)) + tuple(f"v{i}" for i in range(1, 6))

Pair = tuple[int, int]


def u(i: int) -> int:
    return i - 1


def v(i: int) -> int:
    return i + 4


def _petersen_pairs() -> list[Pair]:
    pairs = []
    for i in range(5):
        pairs.append(tuple(sorted((i, (i + 1) % 5))))
        pairs.append(tuple(sorted((5 + i, 5 + (i + 2) % 5))))
        pairs.append((i, 5 + i))
    return sorted(pairs)


def petersen() -> Multigraph:
    return Multigraph.from_edges(10, _petersen_pairs(), LABELS)


def _perfect_matchings(n: int, pairs: list[Pair]) -> list[tuple[Pair, ...]]:
    adj: dict[int, list[Pair]] = {}
    for p in pairs:
        for x in p:
            adj.setdefault(x, []).append(p)
    out: list[tuple[Pair, ...]] = []

    def rec(covered: frozenset[int], chosen: list[Pair]) -> None:
        free = [x for x in range(n) if x not in covered]
        if not free:
            out.append(tuple(sorted(chosen)))
            return
        x = free[0]
        for p in adj.get(x, ()):
            y = p[0] if p[1] == x else p[1]
            if y not in covered:
                rec(covered | {x, y}, chosen + [p])

    rec(frozenset(), [])
    return sorted(out)


@dataclass(frozen=True)
class PetersenCatalog:
    graph: Multigraph
    matchings: tuple[frozenset[Pair], ...]
    common: dict[tuple[int, int], Pair]

    def common_edge(self, i: int, j: int) -> Pair:
        if i == j:
            raise GraphError("common edge needs two distinct matchings")
        if not (0 <= i <= 5 and 0 <= j <= 5):
            raise GraphError(f"matching index out of range: {(i, j)}")
        return self.common[(min(i, j), max(i, j))]

    def pair_of(self, edge: Pair) -> tuple[int, int]:
        """The two matching indices containing ``edge``."""
        e = tuple(sorted(edge))
        idx = tuple(i for i, m in enumerate(self.matchings) if e in m)
        if len(idx) != 2:
            raise GraphError(f"{e} is not an edge of the Petersen graph")
        return idx

    def index_of(self, support: frozenset[Pair]) -> int:
        try:
            return self.matchings.index(frozenset(support))
        except ValueError:
            raise GraphError("not a perfect matching of the Petersen graph") from None

    def to_dict(self) -> dict:
        lab = self.graph.labels
        return {
            "vertices": list(lab),
            "matchings": [
                [[lab[a], lab[b]] for a, b in sorted(m)] for m in self.matchings
            ],
            "common_edges": [
                {"pair": [i, j], "edge": [lab[e[0]], lab[e[1]]]}
                for (i, j), e in sorted(self.common.items())
            ],
        }


@lru_cache(maxsize=1)
def build_catalog() -> PetersenCatalog:
    g = petersen()
    pms = [frozenset(m) for m in _perfect_matchings(10, _petersen_pairs())]
    spokes = frozenset((u(i), v(i)) for i in range(1, 6))
    if spokes not in pms:
        raise AssertionError("spokes do not form a perfect matching")
    ordered = [spokes]
    for i in range(1, 6):
        (mi,) = [m for m in pms if m != spokes and (u(i), v(i)) in m]
        ordered.append(mi)
    if sorted(map(sorted, ordered)) != sorted(map(sorted, pms)):
        raise AssertionError("spoke rule does not index every perfect matching")
    common = {}
    for i, j in combinations(range(6), 2):
        (e,) = ordered[i] & ordered[j]
        common[(i, j)] = e
    return PetersenCatalog(g, tuple(ordered), common)
