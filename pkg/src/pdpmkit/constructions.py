"""Builders for Petersen powers, splices, 3-expansions and the extremal families."""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement

from .multigraph import (
    EdgeCopy,
    GraphError,
    Multigraph,
    add_matching_copies,
    disjoint_union,
    identify,
    relabel,
    remove_copies,
)
from .petersen import build_catalog, u, v


class PreconditionError(GraphError):
    pass


def p_power(m: Sequence[int]) -> Multigraph:
    """The Petersen graph plus ``m[i]`` extra copies of each edge of ``Mi``."""
    if len(m) != 6 or any(c < 0 for c in m):
        raise PreconditionError(f"expected six non-negative counts, got {tuple(m)}")
    cat = build_catalog()
    mult = dict(cat.graph.mult)
    for i, c in enumerate(m):
        for p in cat.matchings[i]:
            mult[p] += c
    return Multigraph(10, cat.graph.labels, mult)


def matching_copies(pairs: Iterable[tuple[int, int]]) -> frozenset[EdgeCopy]:
    return frozenset(EdgeCopy(min(a, b), max(a, b), 0) for a, b in pairs)


# -- splice -------------------------------------------------------------------


@dataclass(frozen=True)
class SpliceRecord:
    t: int
    r: int
    g_side: tuple[int, int]
    h_side: tuple[int, int]
    merged: tuple[int, int]
    g_map: tuple[int, ...]
    h_map: tuple[int, ...]
    g_n: int
    h_n: int

    def to_dict(self) -> dict:
        return asdict(self)


def splice(
    g: Multigraph, u_: int, v_: int, h: Multigraph, x: int, y: int, t: int, r: int
) -> tuple[Multigraph, SpliceRecord]:
    """Delete ``t`` copies of ``uv`` in ``g`` and ``r - t`` of ``xy`` in ``h``, then glue u=x, v=y.

    Vertices of ``g`` keep their ids and labels; the remaining vertices of
    ``h`` follow in their original order.
    """
    if not 0 <= t <= r:
        raise PreconditionError(f"splice needs 0 <= t <= r, got t={t}, r={r}")
    if g.mu(u_, v_) < t:
        raise PreconditionError(f"mu_G({g.labels[u_]},{g.labels[v_]}) = {g.mu(u_, v_)} < t = {t}")
    if h.mu(x, y) < r - t:
        raise PreconditionError(f"mu_H({h.labels[x]},{h.labels[y]}) = {h.mu(x, y)} < r-t = {r - t}")
    g2 = remove_copies(g, u_, v_, t)
    h2 = remove_copies(h, x, y, r - t)
    h_rest = [i for i in range(h.n) if i not in (x, y)]
    h_map = [0] * h.n
    h_map[x], h_map[y] = u_, v_
    for k, i in enumerate(h_rest):
        h_map[i] = g.n + k
    labels = list(g.labels) + [h.labels[i] for i in h_rest]
    clash = set(g.labels) & {h.labels[i] for i in h_rest}
    if clash:
        raise PreconditionError(f"label clash between operands: {sorted(clash)[:3]}")
    mult = dict(g2.mult)
    for (a, b), m in h2.mult.items():
        key = tuple(sorted((h_map[a], h_map[b])))
        mult[key] = mult.get(key, 0) + m
    out = Multigraph(g.n + h.n - 2, tuple(labels), mult)
    rec = SpliceRecord(t, r, (u_, v_), (x, y), (u_, v_), tuple(range(g.n)), tuple(h_map), g.n, h.n)
    return out, rec


# -- 3-expansion --------------------------------------------------------------


def _as_counts(g: Multigraph, at: int, part) -> dict[int, int]:
    counts: dict[int, int] = {}
    if isinstance(part, Mapping):
        items = part.items()
    else:
        items = []
        for e in part:
            if not isinstance(e, EdgeCopy) or at not in e.pair or not g.has_copy(e):
                raise PreconditionError(f"{e!r} is not an edge copy at {g.labels[at]}")
            items.append((e.v if e.u == at else e.u, 1))
        if len(set(part)) != len(items):
            raise PreconditionError("repeated edge copy in partition")
    for w, c in items:
        counts[w] = counts.get(w, 0) + c
    for w, c in counts.items():
        if c < 0 or c > g.mu(at, w):
            raise PreconditionError(f"partition takes {c} copies of {g.labels[at]}{g.labels[w]}")
    return counts


def expand3(g: Multigraph, vert: int, part1, part2=None) -> Multigraph:
    """Split ``vert`` into ``vert'`` (edges in ``part1``) and ``vert''`` (the rest), joined thrice.

    ``part1`` is either a collection of edge copies at ``vert`` or a
    ``{neighbor: count}`` mapping. If ``part2`` is given, the two parts must
    cover the copies at ``vert`` exactly.
    """
    g.check_vertex(vert)
    first = _as_counts(g, vert, part1)
    if part2 is not None:
        second = _as_counts(g, vert, part2)
        if not isinstance(part1, Mapping) and set(part1) & set(part2):
            raise PreconditionError("partition parts overlap")
        for w, m in g.neighbors(vert):
            if first.get(w, 0) + second.get(w, 0) != m:
                raise PreconditionError(f"partition does not cover the edges at {g.labels[vert]}")
        if set(second) - {w for w, _ in g.neighbors(vert)}:
            raise PreconditionError(f"partition names non-neighbors of {g.labels[vert]}")
    new = g.n
    mult = dict(g.mult)
    for w, m in g.neighbors(vert):
        keep = first.get(w, 0)
        mult[tuple(sorted((vert, w)))] = keep
        if m - keep:
            mult[(w, new)] = m - keep
    mult[(vert, new)] = 3
    lab = g.labels[vert]
    labels = list(g.labels)
    labels[vert] = lab + "'"
    labels.append(lab + "''")
    return Multigraph(g.n + 1, tuple(labels), mult)


# -- the Q1 gadget --------------------------------------------------------------


def q1() -> Multigraph:
    """Two copies of P+M0+M1+M2 without their u1v1 bundles, glued at u1.

    Labels carry the copy index (``v1^2``); the glued vertex is ``u1``.
    The two degree-3 ports are ``v1^1`` and ``v1^2``.
    """
    half = p_power((1, 1, 1, 0, 0, 0))
    halves = []
    for c in (1, 2):
        hc = remove_copies(half, u(1), v(1), half.mu(u(1), v(1)))
        halves.append(relabel(hc, [f"{lab}^{c}" for lab in hc.labels]))
    joined, _, right = disjoint_union(halves[0], halves[1])
    out, _ = identify(joined, u(1), right[u(1)], label="u1")
    return out


Q1_PORTS = ("v1^1", "v1^2")


# -- base graphs and the induction step ----------------------------------------


def base_g(l: int) -> tuple[Multigraph, frozenset[EdgeCopy]]:
    if l < 4:
        raise PreconditionError("base graphs P + (l-2)M0 + (l-3)M1 + (l-3)M2 + M3 need l >= 4")
    g = p_power((l - 2, l - 3, l - 3, 1, 0, 0))
    return g, matching_copies(build_catalog().matchings[0])


def p_next(r: int, l: int) -> Multigraph:
    if l < 2:
        raise PreconditionError("l must be at least 2")
    if r < 3 * l - 4:
        raise PreconditionError(f"r = {r} < 3l-4 = {3 * l - 4}: the gadget would be under-connected")
    return p_power((math.ceil((r - l) / 2), (r - l) // 2, l - 2, 0, 0, 0))


@dataclass
class InductionStep:
    l: int
    r: int
    matching_in: tuple[tuple[int, int], ...]
    matching_out: tuple[tuple[int, int], ...]
    splices: list[SpliceRecord] = field(default_factory=list)

    def to_dict(self, with_maps: bool = False) -> dict:
        d = {
            "l": self.l,
            "r": self.r,
            "matching_in": [list(p) for p in self.matching_in],
            "matching_out": [list(p) for p in self.matching_out],
        }
        if with_maps:
            d["splices"] = [s.to_dict() for s in self.splices]
        else:
            d["splices"] = [
                {"t": s.t, "r": s.r, "g_side": list(s.g_side), "h_side": list(s.h_side)}
                for s in self.splices
            ]
        return d


def _pairs_of(m: Iterable) -> list[tuple[int, int]]:
    out = []
    for e in m:
        a, b = e[0], e[1]
        out.append((min(a, b), max(a, b)))
    return sorted(out)


def induction_step(
    g: Multigraph, m: Iterable, l: int, r: int
) -> tuple[Multigraph, frozenset[EdgeCopy], InductionStep]:
    """One step from an r-graph to an (r+1)-graph: add ``m``, then splice a gadget onto each edge of ``m``.

    Only the cheap preconditions are checked here (regularity, ``r >= 3l-4``,
    perfectness of ``m`` and its multiplicities); connectivity is certified
    separately.
    """
    pairs = _pairs_of(m)
    if g.regularity() != r:
        raise PreconditionError(f"input graph is not {r}-regular")
    if r < 3 * l - 4:
        raise PreconditionError(f"r = {r} < 3l-4 = {3 * l - 4}")
    for a, b in pairs:
        if g.mu(a, b) < l - 1:
            raise PreconditionError(
                f"mu({g.labels[a]},{g.labels[b]}) = {g.mu(a, b)} < l-1 = {l - 1}"
            )
    h = add_matching_copies(g, pairs)
    gadget = p_next(r, l)
    m2 = build_catalog().matchings[2]
    step = InductionStep(l, r, tuple(pairs), ())
    out_pairs: list[tuple[int, int]] = []
    for i, (x, y) in enumerate(pairs, start=1):
        tagged = relabel(gadget, [f"{lab}^{i}/{r + 1}" for lab in gadget.labels])
        h, rec = splice(h, x, y, tagged, u(1), v(1), l, r + 1)
        step.splices.append(rec)
        out_pairs.extend(tuple(sorted((rec.h_map[a], rec.h_map[b]))) for a, b in m2)
    step.matching_out = tuple(sorted(out_pairs))
    return h, matching_copies(out_pairs), step


@dataclass
class FamilyProvenance:
    l: int
    r: int
    base: str
    base_r: int
    base_counts: tuple[int, ...] | None
    steps: list[InductionStep] = field(default_factory=list)

    @property
    def kind(self) -> str:
        if self.base == "trivial-range":
            return "trivial-range witness (class 2, lambda >= 2l)"
        return "inductive family"

    def to_dict(self, with_maps: bool = False) -> dict:
        return {
            "l": self.l,
            "r": self.r,
            "kind": self.kind,
            "base": self.base,
            "base_r": self.base_r,
            "base_counts": list(self.base_counts) if self.base_counts is not None else None,
            "chain_length": len(self.steps),
            "steps": [s.to_dict(with_maps) for s in self.steps],
        }


def petersen_lambda(m: Sequence[int]) -> int:
    k = sum(m)
    mu = p_power(m).max_mu()
    return min(k + 3, 2 * k + 6 - 2 * mu)


def trivial_range_counts(l: int, r: int) -> tuple[int, ...]:
    """A Petersen power for 2l <= r <= 3l-5: r-regular, lambda >= 2l, mu >= l-1 on M0.

    Among all qualifying multisets the one with the smallest maximum
    multiplicity is chosen, ties broken towards the lexicographically largest.
    """
    k = r - 3
    cat = build_catalog()
    best = None
    for combo in combinations_with_replacement(range(6), k):
        m = tuple(combo.count(i) for i in range(6))
        g = p_power(m)
        if petersen_lambda(m) < 2 * l:
            continue
        if min(g.mult[p] for p in cat.matchings[0]) < l - 1:
            continue
        key = (g.max_mu(), tuple(-c for c in m))
        if best is None or key < best[0]:
            best = (key, m)
    if best is None:
        raise PreconditionError(f"no Petersen power witnesses l={l}, r={r}")
    return best[1]


def family_witness(
    l: int, r: int, g6_base: tuple[Multigraph, frozenset[EdgeCopy]] | None = None
) -> tuple[Multigraph, frozenset[EdgeCopy], FamilyProvenance]:
    """A 2l-edge-connected r-graph with no (3l-5)-PDPM, with its construction chain.

    For ``l == 3`` the caller supplies the validated G6 base and its matching.
    """
    if l < 3:
        raise PreconditionError("the family is defined for l >= 3")
    if r < 2 * l:
        raise PreconditionError(f"r = {r} < 2l = {2 * l}")
    if l == 3:
        if g6_base is None:
            raise PreconditionError("l = 3 needs the G6 base graph from a validated wiring")
        g, m = g6_base
        base_r, prov = 6, FamilyProvenance(l, r, "G6", 6, None)
    elif r <= 3 * l - 5:
        counts = trivial_range_counts(l, r)
        g = p_power(counts)
        m = matching_copies(build_catalog().matchings[0])
        return g, m, FamilyProvenance(l, r, "trivial-range", r, counts)
    else:
        g, m = base_g(l)
        base_r = 3 * l - 4
        prov = FamilyProvenance(l, r, f"G^{base_r}", base_r, (l - 2, l - 3, l - 3, 1, 0, 0))
    for cur in range(base_r, r):
        g, m, step = induction_step(g, m, l, cur)
        prov.steps.append(step)
    return g, m, prov
