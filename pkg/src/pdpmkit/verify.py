"""Computational checks of the structural lemmas and certificates for the witness family."""

from __future__ import annotations

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from .connectivity import edge_connectivity, is_r_graph, odd_edge_connectivity
from .constructions import (
    Q1_PORTS,
    FamilyProvenance,
    InductionStep,
    SpliceRecord,
    base_g,
    family_witness,
    p_next,
    p_power,
    q1,
    splice,
)
from .matching import (
    DEFAULT_BUDGET,
    Family,
    IntegrityError,
    Support,
    enumerate_pm,
    is_pdpm,
    max_pdpm,
    pdpm_oracle,
)
from .multigraph import (
    EdgeCopy,
    GraphError,
    Multigraph,
    add_matching_copies,
    canonical_json,
    induced,
    relabel,
)
from .petersen import build_catalog
from .wiring import G6Build, Wiring

PROOF_REPLAY_NOTE = (
    "no 4-PDPM certified by proof replay; not established by direct search"
)


@dataclass
class Check:
    name: str
    claimed: object
    computed: object
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "claimed": self.claimed,
            "computed": self.computed,
            "pass": self.passed,
        }


def _check(name: str, claimed, computed, passed: bool | None = None) -> Check:
    return Check(name, claimed, computed, claimed == computed if passed is None else passed)


def all_multisets(max_total: int) -> list[tuple[int, ...]]:
    out = []
    for total in range(max_total + 1):
        for combo in combinations_with_replacement(range(6), total):
            out.append(tuple(combo.count(i) for i in range(6)))
    return out


# -- Petersen structure ------------------------------------------------------------


def verify_petersen() -> list[Check]:
    cat = build_catalog()
    g = cat.graph
    pms = enumerate_pm(g)
    checks = [_check("perfect matchings", 6, len(pms))]
    per_edge = {p: sum(p in m for m in cat.matchings) for p in g.mult}
    checks.append(_check("matchings per edge", [2], sorted(set(per_edge.values()))))
    sizes = sorted({len(a & b) for a, b in combinations(cat.matchings, 2)})
    checks.append(_check("pairwise intersection sizes", [1], sizes))
    spokes = sorted((i, i + 5) for i in range(5))
    checks.append(_check("M0 is the spokes", spokes, sorted(cat.matchings[0])))
    image = sorted(cat.common.values())
    checks.append(_check("pairs biject onto edges", sorted(g.mult), image))
    return checks


# -- connectivity formula -----------------------------------------------------------


@dataclass
class FormulaReport:
    max_total: int
    cases: int = 0
    mismatches: list[dict] = field(default_factory=list)
    odd_mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.odd_mismatches

    def to_dict(self) -> dict:
        return {
            "max_total": self.max_total,
            "cases": self.cases,
            "mismatches": self.mismatches,
            "odd_mismatches": self.odd_mismatches,
            "pass": self.passed,
        }


def verify_lambda_formula(max_total: int = 6) -> FormulaReport:
    """Compare the cut-tree connectivities of every P^M with ``sum(M) <= max_total``."""
    if max_total > 12:
        raise ValueError("max_total is capped at 12")
    rep = FormulaReport(max_total)
    for m in all_multisets(max_total):
        g = p_power(m)
        k, mu = sum(m), g.max_mu()
        formula = min(k + 3, 2 * k + 6 - 2 * mu)
        lam = edge_connectivity(g).value
        lam_o = odd_edge_connectivity(g).value
        rep.cases += 1
        if lam != formula:
            rep.mismatches.append({"m": list(m), "formula": formula, "computed": lam})
        if lam_o != k + 3:
            rep.odd_mismatches.append({"m": list(m), "expected": k + 3, "computed": lam_o})
    return rep


# -- splices ----------------------------------------------------------------------


@dataclass(frozen=True)
class SpliceCase:
    g_counts: tuple[int, ...]
    uv: tuple[int, int]
    h_counts: tuple[int, ...]
    xy: tuple[int, int]
    t: int
    r: int

    def build(self) -> tuple[Multigraph, Multigraph, Multigraph, SpliceRecord]:
        g = p_power(self.g_counts)
        h = p_power(self.h_counts)
        h = Multigraph(h.n, tuple(lab + "'" for lab in h.labels), h.mult)
        gp, rec = splice(g, *self.uv, h, *self.xy, self.t, self.r)
        return g, h, gp, rec

    def name(self) -> str:
        g = "".join(map(str, self.g_counts))
        h = "".join(map(str, self.h_counts))
        return f"P{g}{self.uv}+{self.t}P{h}{self.xy}@r{self.r}"


def _heaviest_pair(m: Sequence[int]) -> tuple[int, int]:
    g = p_power(m)
    return min(g.mult, key=lambda p: (-g.mult[p], p))


def _spread(k: int, shift: int) -> tuple[int, ...]:
    counts = [0] * 6
    for i in range(k):
        counts[(i + shift) % 6] += 1
    return tuple(counts)


def _shapes(k: int) -> list[tuple[int, ...]]:
    out = [_spread(k, 0), _spread(k, 2)]
    if k >= 2:
        out.append(tuple([k - 1, 0, 1, 0, 0, 0]))
    out.append(tuple([k] + [0] * 5))
    return out


def splice_suite(r_values: Sequence[int] = range(4, 10)) -> list[SpliceCase]:
    """Deterministic splices of Petersen powers, one per admissible ``t``.

    Both operands are r-regular powers, whose heaviest bundle has ``r - 2``
    copies at most, so ``t`` runs over ``2..r-2``. For each ``t`` the first
    shape (in a rotating order) with a heavy enough bundle is used.
    """
    cases = []
    for r in r_values:
        shapes = _shapes(r - 3)
        for t in range(2, r - 1):
            rot = shapes[t % len(shapes):] + shapes[: t % len(shapes)]
            gm = next(m for m in rot if p_power(m).max_mu() >= t)
            hm = next(m for m in reversed(rot) if p_power(m).max_mu() >= r - t)
            cases.append(SpliceCase(gm, _heaviest_pair(gm), hm, _heaviest_pair(hm), t, r))
    return cases


def projection_suite() -> list[SpliceCase]:
    """18-vertex splices whose second operand is P^M with |M| = r - 3, for r in 4..6."""
    return splice_suite(range(4, 7))


@dataclass
class SpliceReport:
    case: str
    lambda_g: int
    lambda_h: int
    lambda_spliced: int
    r_graph: int | None
    r: int

    @property
    def passed(self) -> bool:
        return self.lambda_spliced == min(self.lambda_g, self.lambda_h) and self.r_graph == self.r

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "lambda_g": self.lambda_g,
            "lambda_h": self.lambda_h,
            "lambda_spliced": self.lambda_spliced,
            "r_graph": self.r_graph,
            "r": self.r,
            "pass": self.passed,
        }


def verify_splice(
    g: Multigraph, u: int, v: int, h: Multigraph, x: int, y: int, t: int, r: int, name: str = ""
) -> SpliceReport:
    gp, _ = splice(g, u, v, h, x, y, t, r)
    return SpliceReport(
        name,
        edge_connectivity(g).value,
        edge_connectivity(h).value,
        edge_connectivity(gp).value,
        is_r_graph(gp),
        r,
    )


# -- projection of disjoint matchings through a splice ----------------------------


def project_pdpm(
    gp: Multigraph, fam: Family, rec: SpliceRecord, side: str = "g"
) -> Family:
    """Carry a disjoint family of the spliced graph back to one operand.

    A matching of the spliced graph meets the boundary of that operand's
    interior in zero or two edges. With two, those edges are reattached to
    the original endpoints; with zero, a fresh copy of the deleted bundle
    (``uv`` or ``xy``) closes it up. Fresh copies are handed out in order.
    """
    if side not in ("g", "h"):
        raise ValueError("side must be 'g' or 'h'")
    if gp.n != rec.g_n + rec.h_n - 2:
        raise IntegrityError("splice record does not match the graph")
    w1, w2 = rec.merged
    if side == "g":
        to_old = {new: old for old, new in enumerate(rec.g_map)}
        a, b = rec.g_side
        interior = {i for i in range(rec.g_n) if i not in rec.g_side}
    else:
        to_old = {new: old for old, new in enumerate(rec.h_map)}
        a, b = rec.h_side
        interior = {rec.h_map[i] for i in range(rec.h_n) if i not in rec.h_side}
    fresh = 0
    out = []
    for m in fam:
        inner, crossing = [], []
        for e in m:
            ins = (e.u in interior) + (e.v in interior)
            if ins == 2:
                inner.append(e)
            elif ins == 1 and {e.u, e.v} & {w1, w2}:
                crossing.append(e)
        if len(crossing) not in (0, 2):
            raise IntegrityError(f"matching crosses the splice {len(crossing)} times")
        new = []
        for e in inner + crossing:
            x, y = to_old[e.u], to_old[e.v]
            new.append(EdgeCopy(min(x, y), max(x, y), e.copy))
        if not crossing:
            new.append(EdgeCopy(min(a, b), max(a, b), fresh))
            fresh += 1
        out.append(frozenset(new))
    return tuple(out)


@dataclass
class ProjectionReport:
    case: str
    k: int
    families: int
    valid: bool
    avoids_uv: bool
    clause_ii: bool
    valid_h: bool

    @property
    def passed(self) -> bool:
        return self.valid and self.avoids_uv and self.clause_ii and self.valid_h

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "k": self.k,
            "families": self.families,
            "valid": self.valid,
            "avoids_uv": self.avoids_uv,
            "clause_ii": self.clause_ii,
            "valid_h": self.valid_h,
            "pass": self.passed,
        }


def _uses(fam: Family, pair: tuple[int, int]) -> int:
    return sum(1 for m in fam for e in m if e.pair == pair)


def verify_projection(case: SpliceCase, budget: int | None = DEFAULT_BUDGET) -> ProjectionReport:
    """Project every optimal disjoint family of the splice back to both operands."""
    g, h, gp, rec = case.build()
    res = max_pdpm(gp, budget=budget, all_optimal=True)
    if not res.exact:
        raise IntegrityError(f"{case.name()}: search did not finish within budget")
    uv = tuple(sorted(rec.g_side))
    interior = [i for i in range(g.n) if i not in rec.g_side]
    valid = avoids = clause = valid_h = True
    for fam in res.optimal:
        proj = project_pdpm(gp, fam, rec, "g")
        valid &= len(proj) == len(fam) and is_pdpm(g, proj)
        avoids &= _uses(proj, uv) < g.mu(*uv)
        used_before = {e for m in fam for e in m}
        used_after = {e for m in proj for e in m}
        for e in gp.copies():
            if e.u in interior and e.v in interior and e not in used_before:
                clause &= e not in used_after
        proj_h = project_pdpm(gp, fam, rec, "h")
        valid_h &= is_pdpm(h, proj_h)
    return ProjectionReport(case.name(), res.k, len(res.optimal), valid, avoids, clause, valid_h)


def project_chain(
    g_final: Multigraph, fam: Family, records: Sequence[SpliceRecord], graphs: Sequence[Multigraph]
) -> list[Family]:
    """Project through a chain of splices, last splice first.

    ``graphs[i]`` is the graph *before* splice ``records[i]`` was applied.
    Returns the families on every intermediate graph, ending at ``graphs[0]``.
    """
    out = [fam]
    cur_g = g_final
    for rec, before in zip(reversed(records), reversed(graphs)):
        fam = project_pdpm(cur_g, fam, rec, "g")
        if not is_pdpm(before, fam):
            raise IntegrityError("projected family is not a disjoint family")
        out.append(fam)
        cur_g = before
    return out


def step_graphs(g: Multigraph, step: InductionStep) -> list[Multigraph]:
    """Rebuild the graphs ``H^0, ..., H^(s-1)`` that each splice of ``step`` was applied to."""
    h = add_matching_copies(g, step.matching_in)
    gadget = p_next(step.r, step.l)
    out = []
    for i, rec in enumerate(step.splices, start=1):
        out.append(h)
        tagged = relabel(gadget, [f"{lab}^{i}/{step.r + 1}" for lab in gadget.labels])
        h, _ = splice(h, *rec.g_side, tagged, *rec.h_side, rec.t, rec.r)
    return out


@dataclass
class ChainReport:
    k: int
    found: bool
    valid: bool
    avoids_m: bool

    @property
    def passed(self) -> bool:
        return self.found and self.valid and self.avoids_m

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "found": self.found,
            "valid": self.valid,
            "avoids_m": self.avoids_m,
            "pass": self.passed,
        }


def verify_induction_projection(l: int = 4, k: int = 2, budget: int | None = 10**6) -> ChainReport:
    """Find a k-PDPM after one induction step and carry it back to the base graph plus M."""
    g, m, prov = family_witness(l, 3 * l - 3)
    base, _ = base_g(l)
    (step,) = prov.steps
    res = max_pdpm(g, k_target=k, budget=budget)
    if not res.feasible:
        return ChainReport(k, False, False, False)
    graphs = step_graphs(base, step)
    fams = project_chain(g, res.family, step.splices, graphs)
    h0 = graphs[0]
    valid = is_pdpm(h0, fams[-1])
    avoids = all(_uses(fams[-1], p) < h0.mu(*p) for p in step.matching_in)
    return ChainReport(k, True, valid, avoids)


# -- the Q1 boundary lemma --------------------------------------------------------


class _Exhausted(Exception):
    pass


@dataclass
class Q1Report:
    patterns: list[dict]
    feasible_splits: dict[str, int]
    nodes: int
    status: str

    @property
    def passed(self) -> bool:
        if self.status != "exact":
            return False
        if set(self.feasible_splits) != {"2+2"}:
            return False
        return all(
            all(len(s) == 1 for s in p["pattern"]) for p in self.patterns if p["feasible"]
        )

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "nodes": self.nodes,
            "feasible_splits": self.feasible_splits,
            "patterns": self.patterns,
            "pass": self.passed,
        }


def q1_boundary_check(budget: int | None = DEFAULT_BUDGET) -> Q1Report:
    """Four disjoint matchings of Q1 with three pendant edges at each port.

    Every matching must cover all 19 gadget vertices. Boundary patterns
    (pairwise disjoint odd subsets of the six pendants) are enumerated
    first; each is then extended inside the gadget by backtracking.
    """
    q = q1()
    ports = [q.vertex(p) for p in Q1_PORTS]
    pendants = [(port, k) for port in ports for k in range(3)]
    names = [f"{q.labels[p]}#{k}" for p, k in pendants]
    nodes = 0

    inner_cache: dict[tuple[int, ...], list[Support]] = {}

    def completions(subset: tuple[int, ...]) -> list[Support]:
        """Perfect matchings of the gadget minus the ports the pendants in ``subset`` cover."""
        covered = tuple(sorted(pendants[i][0] for i in subset))
        if len(set(covered)) != len(covered):
            return []
        if covered not in inner_cache:
            sub, newid = induced(q, [i for i in range(q.n) if i not in covered])
            back = {nv: ov for ov, nv in newid.items()}
            inner_cache[covered] = [
                tuple(sorted((back[e.u], back[e.v]) for e in pm)) for pm in enumerate_pm(sub)
            ]
        return inner_cache[covered]

    odd_subsets = [s for size in (1, 3, 5) for s in combinations(range(6), size)]
    patterns = [
        combo
        for combo in combinations(odd_subsets, 4)
        if len({i for s in combo for i in s}) == sum(len(s) for s in combo)
    ]

    cap = dict(q.mult)

    def extensions(options: list[list[Support]], i: int) -> int:
        """Number of ways to pick disjoint internal parts for matchings ``i..3``."""
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _Exhausted
        if i == len(options):
            return 1
        total = 0
        for sup in options[i]:
            if all(cap[p] > 0 for p in sup):
                for p in sup:
                    cap[p] -= 1
                try:
                    total += extensions(options, i + 1)
                finally:
                    for p in sup:
                        cap[p] += 1
        return total

    rows = []
    splits: dict[str, int] = {}
    status = "exact"
    for pat in patterns:
        try:
            found = extensions([completions(s) for s in pat], 0)
        except _Exhausted:
            status = "budget_exhausted"
            break
        per_port = [sum(1 for s in pat for i in s if pendants[i][0] == p) for p in ports]
        if found:
            key = f"{per_port[0]}+{per_port[1]}"
            splits[key] = splits.get(key, 0) + found
        rows.append({
            "pattern": [[names[i] for i in s] for s in pat],
            "split": per_port,
            "feasible": bool(found),
            "completions": found,
        })
    return Q1Report(rows, dict(sorted(splits.items())), nodes, status)


# -- replaying the no-4-PDPM argument for G6 -----------------------------------------


@dataclass
class ReplayStep:
    step: str
    passed: bool
    detail: object

    def to_dict(self) -> dict:
        return {"step": self.step, "pass": self.passed, "detail": self.detail}


@dataclass
class ReplayReport:
    steps: list[ReplayStep]

    @property
    def certified(self) -> bool:
        return bool(self.steps) and all(s.passed for s in self.steps) and len(self.steps) == 5

    @property
    def refused_at(self) -> str | None:
        for s in self.steps:
            if not s.passed:
                return s.step
        return None

    def to_dict(self) -> dict:
        return {
            "certified": self.certified,
            "statement": PROOF_REPLAY_NOTE if self.certified else "refused",
            "refused_at": self.refused_at,
            "steps": [s.to_dict() for s in self.steps],
        }


def _gadget_of(label: str, gadgets: Sequence[str]) -> str | None:
    head, dot, _ = label.partition(".")
    return head if dot and head in gadgets else None


def _port_bundles(g: Multigraph, gadgets: Sequence[str]) -> dict[int, int]:
    """Port vertex -> its unique outside neighbour, for ports whose 3 outside copies form one bundle."""
    out = {}
    for i, lab in enumerate(g.labels):
        gname = _gadget_of(lab, gadgets)
        if gname is None or lab.split(".", 1)[1] not in Q1_PORTS:
            continue
        outside = [(w, m) for w, m in g.neighbors(i) if _gadget_of(g.labels[w], gadgets) != gname]
        if len(outside) == 1 and outside[0][1] == 3:
            out[i] = outside[0][0]
    return out


def g6_no4pdpm_replay(
    build: G6Build | tuple[Multigraph, Wiring], q1_report: Q1Report | None = None
) -> ReplayReport:
    """Re-run the argument that G6 has no four disjoint perfect matchings.

    (a) the three w'w'' copies cannot serve four matchings, so some matching
    uses an edge e leaving {w', w''}; (b) each such e ends at a hub vertex
    z of a gadget {x, y, z}; (c) every Q1 copy is attached only through its
    two ports; (d) four disjoint matchings use exactly two boundary edges at
    each Q1 port; (e) with e in the union N, the edges of N leaving
    X = {x, y, z} add up to an odd number, while four perfect matchings meet
    the odd set X an odd number of times each, for an even total.
    """
    if isinstance(build, G6Build):
        g, w = build.g6, build.wiring
    else:
        g, w = build
    gadgets = w.gadgets
    steps: list[ReplayStep] = []

    # (a)
    try:
        wa, wb = g.vertex("w'"), g.vertex("w''")
    except GraphError as exc:
        return ReplayReport([ReplayStep("a", False, str(exc))])
    inner = g.mu(wa, wb)
    bnd = g.boundary([wa, wb])
    ok = inner < 4 and len(bnd) >= 4
    steps.append(ReplayStep("a", ok, {"mu_w'w''": inner, "boundary_copies": len(bnd)}))
    if not ok:
        return ReplayReport(steps)

    # (b)
    hubs = []
    for e in bnd:
        z = e.v if e.u in (wa, wb) else e.u
        lab = g.labels[z]
        base = lab.rstrip("'")
        idx = base[1:]
        ok_z = base.startswith("z") and g.has_label(f"x{idx}") and g.has_label(f"y{idx}")
        hubs.append((e, z, idx, ok_z))
    ok = all(h[3] for h in hubs)
    steps.append(ReplayStep("b", ok, sorted({g.labels[z] for _, z, _, _ in hubs})))
    if not ok:
        return ReplayReport(steps)

    # (c)
    ref = q1()
    problems = []
    for gname in gadgets:
        verts = w.gadget_vertices(g, gname)
        sub, _ = induced(g, verts)
        if Multigraph(sub.n, ref.labels, sub.mult) != ref or len(verts) != ref.n:
            problems.append(f"{gname}: induced subgraph is not Q1")
        for e in g.boundary(verts):
            inside = e.u if e.u in verts else e.v
            if g.labels[inside].split(".", 1)[1] not in Q1_PORTS:
                problems.append(f"{gname}: boundary edge at {g.labels[inside]}")
        for port in Q1_PORTS:
            p = g.vertex(f"{gname}.{port}")
            outside = sum(m for x, m in g.neighbors(p) if x not in verts)
            if outside != 3:
                problems.append(f"{gname}.{port}: {outside} boundary copies")
    steps.append(ReplayStep("c", not problems, problems or "all gadgets attached only at ports"))
    if problems:
        return ReplayReport(steps)

    # (d)
    q1_report = q1_report or q1_boundary_check()
    steps.append(ReplayStep("d", q1_report.passed, q1_report.feasible_splits))
    if not q1_report.passed:
        return ReplayReport(steps)

    # (e)
    ports = _port_bundles(g, gadgets)
    port_of_outside: dict[int, list[int]] = {}
    for p, o in ports.items():
        port_of_outside.setdefault(o, []).append(p)
    details = []
    ok = True
    for e, z, idx, _ in hubs:
        x, y = g.vertex(f"x{idx}"), g.vertex(f"y{idx}")
        xs = {x, y, z}
        terms = []
        determined = True
        bundles: dict[tuple[int, int], int] = {}
        for c in g.boundary(xs):
            bundles[c.pair] = bundles.get(c.pair, 0) + 1
        for (a, b), m in sorted(bundles.items()):
            inside, outside = (a, b) if a in xs else (b, a)
            if (a, b) == e.pair:
                if m != 1:
                    determined = False
                terms.append((f"{g.labels[inside]}-{g.labels[outside]}", "edge e", 1))
            elif outside in ports and ports[outside] == inside:
                terms.append((f"{g.labels[inside]}-{g.labels[outside]}", "Q1 port bundle", 2))
            elif (
                m == 3
                and g.degree(outside) == 6
                and set(port_of_outside.get(outside, [])) == {
                    w_ for w_, _ in g.neighbors(outside) if w_ != inside
                }
                and len(port_of_outside.get(outside, [])) == 1
            ):
                terms.append(
                    (f"{g.labels[inside]}-{g.labels[outside]}", "expansion link: 4 - 2 port edges", 2)
                )
            else:
                determined = False
                terms.append((f"{g.labels[inside]}-{g.labels[outside]}", "undetermined", None))
        total = sum(t[2] for t in terms) if determined else None
        contradiction = determined and total % 2 == 1
        ok &= contradiction
        details.append({
            "e": [g.labels[e.u], g.labels[e.v]],
            "X": sorted(g.labels[i] for i in xs),
            "terms": [list(t) for t in terms],
            "boundary_count_in_N": total,
            "four_odd_terms_sum_even": True,
            "contradiction": contradiction,
        })
    steps.append(ReplayStep("e", ok, details))
    return ReplayReport(steps)


# -- witness certificates -------------------------------------------------------------


@dataclass
class WitnessCertificate:
    graph_hash: str
    properties: list[Check]
    reduction_chain: dict
    oracle_results: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.properties)

    def to_dict(self) -> dict:
        return {
            "graph_hash": self.graph_hash,
            "pass": self.passed,
            "properties": [c.to_dict() for c in self.properties],
            "reduction_chain": self.reduction_chain,
            "oracle_results": self.oracle_results,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def certify_witness(
    g: Multigraph,
    m: frozenset[EdgeCopy],
    prov: FamilyProvenance,
    g6_build: G6Build | None = None,
    replay: ReplayReport | None = None,
    smoke_budget: int | None = None,
) -> WitnessCertificate:
    """Check every property a family member is claimed to have."""
    l, r = prov.l, prov.r
    props = [_check("regular", r, g.regularity())]
    if g.regularity() == r:
        lam_o = odd_edge_connectivity(g).value if g.n % 2 == 0 else None
        lam = edge_connectivity(g).value
        props.append(_check("odd edge-connectivity", r, lam_o))
        props.append(Check("edge-connectivity >= 2l", 2 * l, lam, lam >= 2 * l))
    covered = [0] * g.n
    for e in m:
        covered[e.u] += 1
        covered[e.v] += 1
    perfect = all(c == 1 for c in covered) and all(g.has_copy(e) for e in m)
    props.append(_check("carried matching is perfect", True, perfect))
    low = min((g.mu(e.u, e.v) for e in m), default=0)
    props.append(Check("mu >= l-1 on carried matching", l - 1, low, low >= l - 1))
    props.append(_check("chain length", r - prov.base_r, len(prov.steps)))

    oracle: dict = {}
    if prov.base_counts is not None:
        res = pdpm_oracle(prov.base_counts)
        oracle = {"base_counts": list(prov.base_counts), "max_pdpm": res.max_k}
        props.append(Check("base has no (3l-5)-PDPM", 3 * l - 6, res.max_k, res.max_k <= 3 * l - 6))
    if prov.base == "G6":
        certified = replay is not None and replay.certified
        oracle = {"g6": PROOF_REPLAY_NOTE if certified else "not certified"}
        props.append(_check("G6 replay certified", True, certified))

    rebuilt, rebuilt_m, _ = family_witness(
        l, r, (g6_build.g6, g6_build.m6) if g6_build is not None else None
    ) if prov.base != "G6" or g6_build is not None else (None, None, None)
    same = rebuilt is not None and rebuilt.digest() == g.digest() and rebuilt_m == m
    props.append(_check("reproducible from provenance", True, same))

    if smoke_budget:
        res = max_pdpm(g, k_target=3 * l - 5, budget=smoke_budget)
        verdict = {True: "found", False: "infeasible", None: "inconclusive"}[res.feasible]
        oracle["smoke_search"] = {"k_target": 3 * l - 5, "verdict": verdict, "nodes": res.nodes}
        props.append(Check("smoke search finds no (3l-5)-PDPM", "not found", verdict, verdict != "found"))

    chain = prov.to_dict()
    return WitnessCertificate(g.digest(), props, chain, oracle)


def certificate_digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()

