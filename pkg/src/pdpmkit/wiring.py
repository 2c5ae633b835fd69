"""Declarative wiring for the l = 3 base graph.

A wiring file names the hub vertices, a list of Q1 gadget instances and the
edges between them (``"Q3.v1^2"`` addresses vertex ``v1^2`` of gadget
``Q3``). It also lists the 3-expansions that turn G1 into G6 and the
perfect matching M6 of G6. Nothing in a wiring is trusted: ``g6`` rebuilds
the graphs and refuses to return them unless every checked property holds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .connectivity import edge_connectivity, odd_edge_connectivity
from .constructions import Q1_PORTS, expand3, q1
from .multigraph import EdgeCopy, GraphError, Multigraph

DEFAULT_WIRING = "g1_wiring.json"


class WiringError(GraphError):
    def __init__(self, message: str, violations: list[str] | None = None) -> None:
        super().__init__(message if not violations else f"{message}: " + "; ".join(violations))
        self.violations = violations or []


@dataclass
class Wiring:
    name: str
    hubs: list[str]
    gadgets: list[str]
    edges: list[tuple[str, str, int]]
    removals: list[tuple[str, str, int]]
    expansions: list[tuple[str, dict[str, int]]]
    matching: list[tuple[str, str]]
    gadget_matchings: dict[str, list[tuple[str, str]]]
    degree: int = 6
    raw: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_dict(cls, d: dict) -> Wiring:
        try:
            return cls(
                name=d.get("name", "wiring"),
                hubs=list(d["hubs"]),
                gadgets=list(d["gadgets"]),
                edges=[(a, b, int(m)) for a, b, m in d["edges"]],
                removals=[(a, b, int(m)) for a, b, m in d.get("remove", [])],
                expansions=[(e["vertex"], dict(e["first"])) for e in d["expansions"]],
                matching=[(a, b) for a, b in d["matching"]],
                gadget_matchings={
                    k: [(a, b) for a, b in v] for k, v in d["gadget_matchings"].items()
                },
                degree=int(d.get("degree", 6)),
                raw=d,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise WiringError(f"malformed wiring: {exc!r}") from None

    @classmethod
    def load(cls, path: str | Path | None = None) -> Wiring:
        if path is None:
            text = resources.files("pdpmkit.data").joinpath(DEFAULT_WIRING).read_text()
        else:
            text = Path(path).read_text()
        return cls.from_dict(json.loads(text))

    def gadget_vertices(self, g: Multigraph, name: str) -> list[int]:
        prefix = name + "."
        return [i for i, lab in enumerate(g.labels) if lab.startswith(prefix)]


def build_g1(w: Wiring) -> Multigraph:
    """Assemble G1 exactly as written; no property is checked here."""
    gadget = q1()
    labels = list(w.hubs)
    for name in w.gadgets:
        labels.extend(f"{name}.{lab}" for lab in gadget.labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise WiringError("duplicate vertex names in wiring")
    mult: dict[tuple[int, int], int] = {}
    for k, _ in enumerate(w.gadgets):
        off = len(w.hubs) + k * gadget.n
        for (a, b), m in gadget.mult.items():
            mult[(a + off, b + off)] = m

    def ref(name: str) -> int:
        try:
            return index[name]
        except KeyError:
            raise WiringError(f"unknown endpoint {name!r}") from None

    for a, b, m in w.edges:
        x, y = ref(a), ref(b)
        if x == y:
            raise WiringError(f"loop at {a}")
        key = (min(x, y), max(x, y))
        mult[key] = mult.get(key, 0) + m
    for a, b, m in w.removals:
        x, y = ref(a), ref(b)
        key = (min(x, y), max(x, y))
        if mult.get(key, 0) < m:
            raise WiringError(f"cannot remove {m} copies of {a}{b}")
        mult[key] -= m
    return Multigraph(len(labels), tuple(labels), mult)


def expand_all(g1: Multigraph, w: Wiring) -> Multigraph:
    g = g1
    for name, first in w.expansions:
        vert = g.vertex(name)
        part = {g.vertex(_current(g, nb)): c for nb, c in first.items()}
        g = expand3(g, vert, part)
    return g


def _current(g: Multigraph, name: str) -> str:
    """An expanded vertex keeps its id under the primed label."""
    return name if g.has_label(name) else name + "'"


def connectivity_violations(g: Multigraph, r: int, stage: str) -> list[str]:
    out = []
    if g.regularity() != r:
        bad = sorted({g.labels[i] for i, d in enumerate(g.degrees()) if d != r})
        out.append(f"{stage}: not {r}-regular at {bad[:5]}")
        return out
    lam = edge_connectivity(g).value
    if lam != r:
        out.append(f"{stage}: edge-connectivity {lam} != {r}")
    lam_o = odd_edge_connectivity(g).value
    if lam_o != r:
        out.append(f"{stage}: odd edge-connectivity {lam_o} != {r}")
    return out


def matching_m6(g6: Multigraph, w: Wiring) -> frozenset[EdgeCopy]:
    """Expand the explicit M6 edges plus each gadget's internal part."""
    pairs = []
    external: dict[str, str] = {}
    for a, b in w.matching:
        pairs.append((g6.vertex(a), g6.vertex(b)))
        for end in (a, b):
            gname, _, local = end.partition(".")
            if local in Q1_PORTS and gname in w.gadgets:
                external[gname] = local
    for gname in w.gadgets:
        if gname not in external:
            raise WiringError(f"gadget {gname} has no externally matched port")
        for a, b in w.gadget_matchings[external[gname]]:
            pairs.append((g6.vertex(f"{gname}.{a}"), g6.vertex(f"{gname}.{b}")))
    return frozenset(EdgeCopy(min(a, b), max(a, b), 0) for a, b in pairs)


@dataclass
class G6Build:
    g1: Multigraph
    g6: Multigraph
    m6: frozenset[EdgeCopy]
    wiring: Wiring
    checks: dict[str, bool]


def g6(w: Wiring | None = None) -> G6Build:
    """Validate the wiring and return G1, G6 and M6; raises ``WiringError`` on any failure."""
    w = w or Wiring.load()
    g1 = build_g1(w)
    violations = connectivity_violations(g1, w.degree, "G1")
    if violations:
        raise WiringError("G1 rejected", violations)
    g = expand_all(g1, w)
    violations = connectivity_violations(g, w.degree, "G6")
    if g.n != g1.n + len(w.expansions):
        violations.append("G6: wrong vertex count")
    try:
        m6 = matching_m6(g, w)
    except GraphError as exc:
        raise WiringError("M6 rejected", [str(exc)]) from None
    covered = [0] * g.n
    for e in m6:
        covered[e.u] += 1
        covered[e.v] += 1
        if g.mu(e.u, e.v) < 2:
            violations.append(f"M6: mu({g.labels[e.u]},{g.labels[e.v]}) = {g.mu(e.u, e.v)} < 2")
    if any(c != 1 for c in covered):
        violations.append("M6: not a perfect matching")
    if violations:
        raise WiringError("G6 rejected", violations)
    checks = {"g1_6_graph": True, "g6_6_graph": True, "m6_perfect_mu2": True}
    return G6Build(g1, g, m6, w, checks)
