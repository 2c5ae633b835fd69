"""Edge-connectivity and odd edge-connectivity of multigraphs.

Every parallel copy carries capacity one, so a bundle of ``m`` copies is a
single undirected arc of capacity ``m``. Pairwise minimum cuts come from
Dinic's algorithm; all of them are summarised in a Gomory-Hu cut tree
(Gusfield's variant). The global minimum cut and the minimum odd cut are
both read off the fundamental cuts of that tree (Padberg-Rao for T = V).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .multigraph import GraphError, Multigraph


class UnsupportedInput(GraphError):
    pass


@dataclass(frozen=True)
class CutResult:
    value: int
    side: tuple[int, ...]


@dataclass(frozen=True)
class GomoryHuTree:
    parent: tuple[int, ...]
    weight: tuple[int, ...]

    def edges(self) -> list[tuple[int, int, int]]:
        return [(v, p, self.weight[v]) for v, p in enumerate(self.parent) if p >= 0]

    def min_cut(self, s: int, t: int) -> int:
        """Minimum link weight on the tree path between ``s`` and ``t``."""
        if s == t:
            raise GraphError("s and t coincide")
        up = {}
        x, best = s, None
        while x >= 0:
            up[x] = best
            w = self.weight[x]
            best = w if best is None else min(best, w)
            x = self.parent[x]
        x, best = t, None
        while x not in up:
            w = self.weight[x]
            best = w if best is None else min(best, w)
            x = self.parent[x]
        ends = [b for b in (best, up[x]) if b is not None]
        return min(ends)

    def component(self, v: int) -> tuple[int, ...]:
        """Vertices on ``v``'s side when the link from ``v`` to its parent is cut."""
        children: dict[int, list[int]] = {}
        for c, p in enumerate(self.parent):
            if p >= 0:
                children.setdefault(p, []).append(c)
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(children.get(x, ()))
        return tuple(sorted(out))


class _Dinic:
    def __init__(self, g: Multigraph) -> None:
        n = g.n
        self.n = n
        head = [[] for _ in range(n)]
        to: list[int] = []
        cap: list[int] = []
        for u, v, m in g.pairs():
            head[u].append(len(to))
            to.append(v)
            cap.append(m)
            head[v].append(len(to))
            to.append(u)
            cap.append(m)
        self.head = head
        self.to = to
        self.cap0 = cap

    def run(self, s: int, t: int) -> tuple[int, list[bool]]:
        head, to = self.head, self.to
        cap = list(self.cap0)
        n = self.n
        flow = 0
        while True:
            level = [-1] * n
            level[s] = 0
            q = deque([s])
            while q:
                x = q.popleft()
                for a in head[x]:
                    if cap[a] > 0 and level[to[a]] < 0:
                        level[to[a]] = level[x] + 1
                        q.append(to[a])
            if level[t] < 0:
                return flow, [lv >= 0 for lv in level]
            it = [0] * n
            while True:
                pushed = self._augment(s, t, level, it, cap)
                if not pushed:
                    break
                flow += pushed

    def _augment(self, s, t, level, it, cap) -> int:
        head, to = self.head, self.to
        path: list[int] = []
        x = s
        while True:
            if x == t:
                f = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= f
                    cap[a ^ 1] += f
                return f
            arcs = head[x]
            advanced = False
            while it[x] < len(arcs):
                a = arcs[it[x]]
                y = to[a]
                if cap[a] > 0 and level[y] == level[x] + 1:
                    path.append(a)
                    x = y
                    advanced = True
                    break
                it[x] += 1
            if not advanced:
                if not path:
                    return 0
                level[x] = -1
                a = path.pop()
                x = to[a ^ 1]
                it[x] += 1


def _min_cut(g: Multigraph, s: int, t: int, net: _Dinic | None = None) -> tuple[int, list[bool]]:
    g.check_vertex(s)
    g.check_vertex(t)
    if s == t:
        raise GraphError("source and sink must differ")
    return (net or _Dinic(g)).run(s, t)


def max_flow(g: Multigraph, s: int, t: int) -> int:
    return _min_cut(g, s, t)[0]


@lru_cache(maxsize=64)
def gomory_hu(g: Multigraph) -> GomoryHuTree:
    n = g.n
    if n < 2:
        raise GraphError("cut tree needs at least two vertices")
    net = _Dinic(g)
    parent = [0] * n
    parent[0] = -1
    weight = [0] * n
    for s in range(1, n):
        t = parent[s]
        value, side = _min_cut(g, s, t, net)
        weight[s] = value
        for j in range(n):
            if j != s and side[j] and parent[j] == t:
                parent[j] = s
        if parent[t] >= 0 and side[parent[t]]:
            parent[s] = parent[t]
            parent[t] = s
            weight[s], weight[t] = weight[t], value
    return GomoryHuTree(tuple(parent), tuple(weight))


def _canonical_side(n: int, side: tuple[int, ...]) -> tuple[int, ...]:
    if 0 in side:
        return side
    inside = set(side)
    return tuple(v for v in range(n) if v not in inside)


def _best(g: Multigraph, shores) -> CutResult | None:
    best: CutResult | None = None
    for shore in shores:
        value = g.boundary_size(shore)
        side = _canonical_side(g.n, shore)
        if best is None or (value, side) < (best.value, best.side):
            best = CutResult(value, side)
    return best


def edge_connectivity(g: Multigraph) -> CutResult:
    if g.n < 2:
        raise GraphError("edge connectivity needs at least two vertices")
    tree = gomory_hu(g)
    return _best(g, (tree.component(v) for v in range(1, g.n)))


def odd_edge_connectivity(g: Multigraph) -> CutResult:
    if g.n % 2:
        raise UnsupportedInput("odd edge-connectivity is only defined here for even order")
    if g.n < 2:
        raise GraphError("odd edge-connectivity needs at least two vertices")
    tree = gomory_hu(g)
    shores = (c for c in (tree.component(v) for v in range(1, g.n)) if len(c) % 2)
    return _best(g, shores)


def is_r_graph(g: Multigraph) -> int | None:
    r = g.regularity()
    if r is None or g.n < 2 or g.n % 2:
        return None
    return r if odd_edge_connectivity(g).value == r else None


def brute_force_cuts(g: Multigraph) -> tuple[CutResult, CutResult | None]:
    """Global and odd minimum cuts by enumerating every shore containing vertex 0."""
    if g.n > 16:
        raise UnsupportedInput("brute force limited to 16 vertices")
    if g.n < 2:
        raise GraphError("need at least two vertices")
    best = odd = None
    rest = range(1, g.n)
    for size in range(0, g.n - 1):
        for combo in combinations(rest, size):
            side = (0,) + combo
            value = g.boundary_size(side)
            cand = CutResult(value, side)
            if best is None or (value, side) < (best.value, best.side):
                best = cand
            if len(side) % 2 and (odd is None or (value, side) < (odd.value, odd.side)):
                odd = cand
    return best, odd
