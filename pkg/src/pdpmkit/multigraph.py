"""Loopless multigraphs with interchangeable parallel edge copies.

A graph stores one multiplicity per unordered vertex pair. Individual
copies are synthesized on demand as ``EdgeCopy(u, v, i)`` with
``0 <= i < mu(u, v)``, so two graphs with equal multiplicities are equal.
Graphs are immutable; every surgery primitive returns a new graph together
with a map from old vertex ids to new ones.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

MAX_VERTICES = 10_000


class GraphError(ValueError):
    """Raised on invalid vertex ids, vertex sets or surgery requests."""


class EdgeCopy(NamedTuple):
    u: int
    v: int
    copy: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


def edge_copy(u: int, v: int, copy: int = 0) -> EdgeCopy:
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return EdgeCopy(u, v, copy) if u < v else EdgeCopy(v, u, copy)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class Multigraph:
    n: int
    labels: tuple[str, ...]
    mult: Mapping[tuple[int, int], int]
    _adj: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False)
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.labels) != self.n:
            raise GraphError("one label per vertex required")
        index = {lab: i for i, lab in enumerate(self.labels)}
        if len(index) != self.n:
            raise GraphError("vertex labels must be unique")
        clean: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for (u, v), m in sorted(self.mult.items()):
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad vertex pair {(u, v)}")
            if m < 0:
                raise GraphError(f"negative multiplicity on {(u, v)}")
            if m:
                clean[(u, v)] = m
                adj[u].append((v, m))
                adj[v].append((u, m))
        object.__setattr__(self, "mult", clean)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int] | tuple[int, int, int]],
        labels: Sequence[str] | None = None,
    ) -> Multigraph:
        """Build from ``(u, v)`` or ``(u, v, multiplicity)`` items; repeats accumulate."""
        mult: dict[tuple[int, int], int] = {}
        for item in edges:
            u, v = item[0], item[1]
            m = item[2] if len(item) > 2 else 1
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} outside 0..{n - 1}")
            key = _pair(u, v)
            mult[key] = mult.get(key, 0) + m
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(n, tuple(labels), mult)

    # -- identity ---------------------------------------------------------

    def _key(self) -> tuple:
        return (self.n, self.labels, tuple(sorted(self.mult.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # -- basic queries ----------------------------------------------------

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"unknown vertex id {v!r}")

    def vertex(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def has_label(self, label: str) -> bool:
        return label in self._index

    def mu(self, u: int, v: int) -> int:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            return 0
        return self.mult.get(_pair(u, v), 0)

    def max_mu(self) -> int:
        if self.n == 0:
            raise GraphError("empty graph")
        return max(self.mult.values(), default=0)

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(neighbor, multiplicity)`` pairs, sorted by neighbor."""
        self.check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return sum(m for _, m in self.neighbors(v))

    def degrees(self) -> list[int]:
        return [sum(m for _, m in a) for a in self._adj]

    def regularity(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def edge_count(self) -> int:
        return sum(self.mult.values())

    def pairs(self) -> list[tuple[int, int, int]]:
        return [(u, v, m) for (u, v), m in sorted(self.mult.items())]

    def copies(self) -> Iterator[EdgeCopy]:
        for (u, v), m in sorted(self.mult.items()):
            for i in range(m):
                yield EdgeCopy(u, v, i)

    def has_copy(self, e: EdgeCopy) -> bool:
        return 0 <= e.copy < self.mult.get(_pair(e.u, e.v), 0)

    # -- cuts -------------------------------------------------------------

    def _vertex_set(self, x: Iterable[int]) -> frozenset[int]:
        xs = frozenset(x)
        for v in xs:
            self.check_vertex(v)
        return xs

    def boundary(self, x: Iterable[int]) -> list[EdgeCopy]:
        """Edge copies with exactly one end in ``x``."""
        xs = self._vertex_set(x)
        if not xs or len(xs) == self.n:
            raise GraphError("boundary needs a non-empty proper vertex subset")
        out = []
        for v in sorted(xs):
            for w, m in self._adj[v]:
                if w not in xs:
                    out.extend(EdgeCopy(*_pair(v, w), i) for i in range(m))
        return sorted(out)

    def boundary_size(self, x: Iterable[int]) -> int:
        xs = self._vertex_set(x)
        return sum(m for v in xs for w, m in self._adj[v] if w not in xs)

    def edges_between(self, x: Iterable[int], y: Iterable[int]) -> list[EdgeCopy]:
        xs, ys = self._vertex_set(x), self._vertex_set(y)
        if xs & ys:
            raise GraphError("edges_between needs disjoint vertex sets")
        out = []
        for v in sorted(xs):
            for w, m in self._adj[v]:
                if w in ys:
                    out.extend(EdgeCopy(*_pair(v, w), i) for i in range(m))
        return sorted(out)

    def inner_edge_count(self, x: Iterable[int]) -> int:
        """Number of edge copies of the induced subgraph on ``x``."""
        xs = self._vertex_set(x)
        return sum(m for (u, v), m in self.mult.items() if u in xs and v in xs)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "labels": list(self.labels), "edges": [list(e) for e in self.pairs()]}

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> Multigraph:
        n = int(data["n"])
        labels = data.get("labels") or [str(i) for i in range(n)]
        edges = [tuple(int(x) for x in e) for e in data["edges"]]
        return cls.from_edges(n, edges, labels)

    @classmethod
    def from_json(cls, text: str) -> Multigraph:
        return cls.from_dict(json.loads(text))

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  {i} [label="{lab}"];')
        for u, v, m in self.pairs():
            attr = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  {u} -- {v}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def canonical_json(data: object) -> str:
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False) + "\n"


# -- construction primitives ---------------------------------------------


def add_matching_copies(g: Multigraph, f: Iterable[tuple[int, int]]) -> Multigraph:
    """Return ``g + F``: one extra copy of every pair of the perfect matching ``f``."""
    pairs = [_pair(*e[:2]) for e in f]
    covered = [0] * g.n
    for u, v in pairs:
        g.check_vertex(u)
        g.check_vertex(v)
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        covered[u] += 1
        covered[v] += 1
    if any(c != 1 for c in covered):
        raise GraphError("matching does not cover every vertex exactly once")
    mult = dict(g.mult)
    for p in pairs:
        mult[p] = mult.get(p, 0) + 1
    return Multigraph(g.n, g.labels, mult)


def remove_copies(g: Multigraph, u: int, v: int, count: int) -> Multigraph:
    have = g.mu(u, v)
    if count < 0 or count > have:
        raise GraphError(f"cannot remove {count} copies of {g.labels[u]}{g.labels[v]}: only {have}")
    mult = dict(g.mult)
    mult[_pair(u, v)] = have - count
    return Multigraph(g.n, g.labels, mult)


def relabel(g: Multigraph, labels: Sequence[str]) -> Multigraph:
    return Multigraph(g.n, tuple(labels), g.mult)


def disjoint_union(
    g: Multigraph, h: Multigraph
) -> tuple[Multigraph, list[int], list[int]]:
    mult = dict(g.mult)
    off = g.n
    for (u, v), m in h.mult.items():
        mult[(u + off, v + off)] = m
    union = Multigraph(g.n + h.n, g.labels + h.labels, mult)
    return union, list(range(g.n)), [i + off for i in range(h.n)]


def identify(g: Multigraph, u: int, v: int, label: str | None = None) -> tuple[Multigraph, list[int]]:
    """Merge ``v`` into ``u``; ids above ``v`` shift down by one."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        raise GraphError("cannot identify a vertex with itself")
    if g.mu(u, v):
        raise GraphError(f"identifying {g.labels[u]} and {g.labels[v]} would create loops")
    keep = u
    newid = [i - (i > v) for i in range(g.n)]
    newid[v] = newid[keep]
    mult: dict[tuple[int, int], int] = {}
    for (a, b), m in g.mult.items():
        key = _pair(newid[a], newid[b])
        mult[key] = mult.get(key, 0) + m
    labels = [lab for i, lab in enumerate(g.labels) if i != v]
    if label is not None:
        labels[newid[keep]] = label
    return Multigraph(g.n - 1, tuple(labels), mult), newid


def induced(g: Multigraph, x: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    keep = sorted(g._vertex_set(x))
    newid = {v: i for i, v in enumerate(keep)}
    mult = {
        (newid[u], newid[v]): m for (u, v), m in g.mult.items() if u in newid and v in newid
    }
    return Multigraph(len(keep), tuple(g.labels[v] for v in keep), mult), newid


def surgery(g: Multigraph, ops: Sequence[tuple]) -> tuple[Multigraph, list[int | None]]:
    """Apply ``("remove", u, v, count)``, ``("identify", u, v)`` and ``("induced", X)`` in order.

    Vertex arguments always refer to ids of the *original* graph. Returns the
    result and the old-to-new id map (``None`` for vertices dropped by ``induced``).
    """
    cur = g
    where: list[int | None] = list(range(g.n))

    def now(v: int) -> int:
        g.check_vertex(v)
        w = where[v]
        if w is None:
            raise GraphError(f"vertex {g.labels[v]} no longer exists")
        return w

    for op in ops:
        kind = op[0]
        if kind == "remove":
            cur = remove_copies(cur, now(op[1]), now(op[2]), op[3])
        elif kind == "identify":
            cur, m = identify(cur, now(op[1]), now(op[2]))
            where = [None if w is None else m[w] for w in where]
        elif kind == "induced":
            cur, m = induced(cur, [now(v) for v in op[1]])
            where = [None if w is None else m.get(w) for w in where]
        else:
            raise GraphError(f"unknown surgery step {kind!r}")
    return cur, where
