"""Perfect matchings and pairwise disjoint perfect matchings (PDPMs).

Disjointness is decided per edge copy: two perfect matchings may both join
``u`` and ``v`` as long as they use different parallel copies. Since copies
are interchangeable, a family of disjoint perfect matchings is determined
(up to renaming copies) by the multiset of its *support* matchings, subject
to "no pair is used more often than its multiplicity". The exact search
works on these multisets in nondecreasing order, which removes both the
permutation symmetry of the family and the copy symmetry of each bundle.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import combinations, product

from .constructions import p_power
from .multigraph import EdgeCopy, GraphError, Multigraph, edge_copy
from .petersen import PetersenCatalog, build_catalog

Pair = tuple[int, int]
Support = tuple[Pair, ...]
Matching = frozenset[EdgeCopy]
Family = tuple[Matching, ...]

DEFAULT_BUDGET = 10_000_000
EXPAND_CAP = 1_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: int) -> None:
        super().__init__(message)
        self.partial = partial


class IntegrityError(RuntimeError):
    pass


class _Budget:
    def __init__(self, limit: int | None) -> None:
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


# -- single perfect matchings ----------------------------------------------


def is_perfect_matching(g: Multigraph, m: Iterable[EdgeCopy]) -> bool:
    seen = [0] * g.n
    for e in m:
        if not g.has_copy(e):
            return False
        seen[e.u] += 1
        seen[e.v] += 1
    return all(c == 1 for c in seen)


def is_pdpm(g: Multigraph, fam: Sequence[Iterable[EdgeCopy]]) -> bool:
    used: set[EdgeCopy] = set()
    for m in fam:
        m = set(m)
        if not is_perfect_matching(g, m) or used & m:
            return False
        used |= m
    return True


def support_of(m: Iterable[EdgeCopy]) -> Support:
    return tuple(sorted(e.pair for e in m))


def _support_matchings(
    g: Multigraph, cap: dict[Pair, int], budget: _Budget
) -> Iterator[Support]:
    """Perfect matchings of the support of ``cap`` (pairs with spare copies).

    Branches on the uncovered vertex with the fewest usable incident copies.
    """
    n = g.n
    if n % 2:
        return
    adj = [[w for w, _ in g.neighbors(x)] for x in range(n)]
    covered = [False] * n
    chosen: list[Pair] = []

    def options(x: int) -> list[int]:
        return [w for w in adj[x] if not covered[w] and cap.get((min(x, w), max(x, w)), 0) > 0]

    def rec(left: int) -> Iterator[Support]:
        budget.tick()
        if left == 0:
            yield tuple(sorted(chosen))
            return
        best, best_opts, best_copies = -1, None, None
        for x in range(n):
            if covered[x]:
                continue
            opts = options(x)
            if not opts:
                return
            copies = sum(cap[(min(x, w), max(x, w))] for w in opts)
            if best_copies is None or copies < best_copies:
                best, best_opts, best_copies = x, opts, copies
        x = best
        covered[x] = True
        for w in best_opts:
            covered[w] = True
            chosen.append((min(x, w), max(x, w)))
            yield from rec(left - 2)
            chosen.pop()
            covered[w] = False
        covered[x] = False

    yield from rec(n)


def _expand(support: Support) -> Matching:
    return frozenset(EdgeCopy(a, b, 0) for a, b in support)


def count_pm(g: Multigraph, mode: str = "support", budget: int | None = None) -> int:
    b = _Budget(budget)
    total = 0
    try:
        for s in _support_matchings(g, dict(g.mult), b):
            total += 1 if mode == "support" else math.prod(g.mult[p] for p in s)
    except _OutOfBudget:
        raise BudgetExceeded("node budget exhausted while counting", total) from None
    return total


def enumerate_pm(g: Multigraph, mode: str = "support", cap: int = EXPAND_CAP) -> list[Matching]:
    """All perfect matchings, either of the simple support or copy by copy.

    Support matchings use copy 0 of every pair. In ``copies`` mode the total
    is checked against ``cap`` before anything is expanded.
    """
    if mode not in ("support", "copies"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.n % 2:
        return []
    supports = sorted(_support_matchings(g, dict(g.mult), _Budget(None)))
    if mode == "support":
        return [_expand(s) for s in supports]
    total = sum(math.prod(g.mult[p] for p in s) for s in supports)
    if total > cap:
        raise BudgetExceeded(f"{total} copy-level matchings exceed cap {cap}", total)
    out = []
    for s in supports:
        for idx in product(*(range(g.mult[p]) for p in s)):
            out.append(frozenset(EdgeCopy(a, b, i) for (a, b), i in zip(s, idx)))
    return out


# -- families ----------------------------------------------------------------


def realize(supports: Sequence[Support]) -> Family:
    """Assign copies canonically: each pair's copies are handed out in increasing index."""
    nxt: dict[Pair, int] = {}
    fam = []
    for s in supports:
        m = []
        for p in s:
            i = nxt.get(p, 0)
            nxt[p] = i + 1
            m.append(EdgeCopy(p[0], p[1], i))
        fam.append(frozenset(m))
    return tuple(fam)


def family_to_list(fam: Family) -> list[list[list[int]]]:
    return [[list(e) for e in sorted(m)] for m in fam]


@dataclass
class PdpmResult:
    k: int
    family: Family
    status: str
    nodes: int
    k_target: int | None = None
    optimal: list[Family] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    @property
    def feasible(self) -> bool | None:
        """Whether a ``k_target``-PDPM exists; ``None`` if undecided."""
        if self.k_target is None:
            return None
        if self.k >= self.k_target:
            return True
        return False if self.exact else None


class _Search:
    def __init__(self, g: Multigraph, supports: list[Support], budget: _Budget) -> None:
        self.g = g
        self.supports = supports
        self.budget = budget
        self.cap = dict(g.mult)

    def fits(self, j: int) -> bool:
        cap = self.cap
        return all(cap[p] > 0 for p in self.supports[j])

    def bound(self, cands: list[int]) -> int:
        """Upper bound on further matchings drawn from ``cands``."""
        if not cands:
            return 0
        usable: dict[Pair, None] = {}
        for j in cands:
            for p in self.supports[j]:
                usable[p] = None
        per_vertex = [0] * self.g.n
        for p in usable:
            c = self.cap[p]
            per_vertex[p[0]] += c
            per_vertex[p[1]] += c
        return min(per_vertex)

    def run(self, k_target: int | None, collect: bool) -> tuple[int, list[list[int]], list[list[int]]]:
        best_k = 0
        best: list[int] = []
        optimal: list[list[int]] = [[]] if collect else []
        chosen: list[int] = []
        cap = self.cap
        supports = self.supports

        class _Done(Exception):
            pass

        def rec(cands: list[int]) -> None:
            nonlocal best_k, best, optimal
            self.budget.tick()
            depth = len(chosen)
            if depth > best_k:
                best_k, best = depth, list(chosen)
                if collect:
                    optimal = []
            if collect and depth == best_k and depth > 0:
                optimal.append(list(chosen))
            if k_target is not None and best_k >= k_target:
                raise _Done
            limit = self.bound(cands)
            if collect:
                if depth + limit < best_k:
                    return
            elif depth + limit <= best_k:
                return
            for pos, j in enumerate(cands):
                for p in supports[j]:
                    cap[p] -= 1
                chosen.append(j)
                rest = [i for i in cands[pos:] if self.fits(i)]
                try:
                    rec(rest)
                finally:
                    chosen.pop()
                    for p in supports[j]:
                        cap[p] += 1

        try:
            rec([j for j in range(len(supports)) if self.fits(j)])
        except _Done:
            pass
        return best_k, best, optimal


def max_pdpm(
    g: Multigraph,
    k_target: int | None = None,
    budget: int | None = DEFAULT_BUDGET,
    all_optimal: bool = False,
) -> PdpmResult:
    """Largest set of pairwise disjoint perfect matchings, exact within ``budget`` nodes.

    With ``k_target`` the search stops as soon as that many are found. With
    ``all_optimal`` every optimal family (as a canonical multiset) is kept.
    """
    if g.n % 2:
        raise GraphError("graphs of odd order have no perfect matching")
    b = _Budget(budget)
    supports: list[Support] = []
    try:
        for s in _support_matchings(g, dict(g.mult), b):
            supports.append(s)
        supports.sort()
        search = _Search(g, supports, b)
        k, best, optimal = search.run(k_target, all_optimal)
        status = "exact"
    except _OutOfBudget:
        return _lazy_search(g, k_target, b)
    fam = realize([supports[j] for j in best])
    opt = [realize([supports[j] for j in o]) for o in optimal] if all_optimal else []
    return PdpmResult(k, fam, status, b.used, k_target, opt)


def _lazy_search(g: Multigraph, k_target: int | None, spent: _Budget) -> PdpmResult:
    """Depth-first fallback that never materialises the full matching list.

    Only used when enumeration alone exhausts the budget; it restarts with a
    fresh budget of the same size and reports ``budget_exhausted`` unless it
    reaches ``k_target``.
    """
    b = _Budget(spent.limit)
    cap = dict(g.mult)
    chosen: list[Support] = []
    best: list[Support] = []

    def rec() -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if k_target is not None and len(best) >= k_target:
            return True
        for s in _support_matchings(g, cap, b):
            for p in s:
                cap[p] -= 1
            chosen.append(s)
            try:
                if rec():
                    return True
            finally:
                chosen.pop()
                for p in s:
                    cap[p] += 1
        return False

    done = False
    try:
        done = rec()
    except _OutOfBudget:
        pass
    status = "exact" if done else "budget_exhausted"
    return PdpmResult(len(best), realize(best), status, spent.used + b.used, k_target)


def iter_families(g: Multigraph, budget: int | None = DEFAULT_BUDGET) -> Iterator[Family]:
    """Every PDPM family of ``g`` (including the empty one), once per multiset."""
    b = _Budget(budget)
    try:
        supports = sorted(_support_matchings(g, dict(g.mult), b))
    except _OutOfBudget:
        raise BudgetExceeded("budget exhausted enumerating matchings", b.used) from None
    cap = dict(g.mult)
    chosen: list[int] = []

    def rec(start: int) -> Iterator[Family]:
        b.tick()
        yield realize([supports[j] for j in chosen])
        for j in range(start, len(supports)):
            s = supports[j]
            if all(cap[p] > 0 for p in s):
                for p in s:
                    cap[p] -= 1
                chosen.append(j)
                yield from rec(j)
                chosen.pop()
                for p in s:
                    cap[p] += 1

    try:
        yield from rec(0)
    except _OutOfBudget:
        raise BudgetExceeded("budget exhausted enumerating families", b.used) from None


# -- the Petersen-power oracle -------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    counts: tuple[int, ...]
    max_k: int
    optimal: tuple[tuple[int, ...], ...]
    k_target: int | None = None

    @property
    def target_feasible(self) -> bool | None:
        return None if self.k_target is None else self.max_k >= self.k_target


def _check_counts(m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if len(m) != 6 or any(x < 0 for x in m):
        raise ValueError(f"a Petersen multiset is six non-negative counts, got {m}")
    return m


def feasible_vectors(m: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All ``n`` with ``n_i + n_j <= 1 + m_i + m_j`` for every pair ``i < j``.

    Each edge of P lies in exactly two of the six matchings, so these are
    exactly the multiplicity constraints of the Petersen power.
    """
    m = _check_counts(m)
    tops = [1 + m[i] + min(m[j] for j in range(6) if j != i) for i in range(6)]
    pairs = list(combinations(range(6), 2))
    for n in product(*(range(t + 1) for t in tops)):
        if all(n[i] + n[j] <= 1 + m[i] + m[j] for i, j in pairs):
            yield n


def pdpm_oracle(m: Sequence[int], k_target: int | None = None) -> OracleResult:
    m = _check_counts(m)
    best, opt = -1, []
    for n in feasible_vectors(m):
        s = sum(n)
        if s > best:
            best, opt = s, [n]
        elif s == best:
            opt.append(n)
    return OracleResult(m, best, tuple(opt), k_target)


def petersen_multiset(g: Multigraph) -> tuple[int, ...] | None:
    """Recover ``m`` when ``g`` is a Petersen power on the canonical ids, else ``None``."""
    cat = build_catalog()
    if g.n != 10 or set(g.mult) != set(cat.graph.mult):
        return None
    a = {ij: g.mult[e] - 1 for ij, e in cat.common.items()}

    def s(i: int, j: int) -> int:
        return a[(min(i, j), max(i, j))]

    m = []
    for i in range(6):
        j, k = [x for x in range(6) if x != i][:2]
        twice = s(i, j) + s(i, k) - s(j, k)
        if twice < 0 or twice % 2:
            return None
        m.append(twice // 2)
    if p_power(m) != g:
        return None
    return tuple(m)


def project_family(cat: PetersenCatalog, fam: Iterable[Iterable[EdgeCopy]]) -> tuple[int, ...]:
    counts = [0] * 6
    for m in fam:
        sup = frozenset(support_of(m))
        try:
            counts[cat.index_of(sup)] += 1
        except GraphError:
            raise IntegrityError(f"support {sorted(sup)} is not a Petersen perfect matching") from None
    return tuple(counts)


@dataclass
class Lemma22Report:
    counts: tuple[int, ...]
    vectors_checked: int
    violations: list[tuple[int, ...]]
    families_checked: int = 0
    cover_violations: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.cover_violations


def lemma22_check(m: Sequence[int], direct: bool = False) -> Lemma22Report:
    """At most one index may exceed its multiset count in any disjoint family.

    With ``direct`` the Petersen power is searched matching by matching for a
    family that covers both edge bundles at some vertex.
    """
    m = _check_counts(m)
    checked, bad = 0, []
    for n in feasible_vectors(m):
        checked += 1
        if sum(1 for i in range(6) if n[i] > m[i]) > 1:
            bad.append(n)
    report = Lemma22Report(m, checked, bad)
    if direct:
        g = p_power(m)
        lab = g.labels
        for fam in iter_families(g):
            report.families_checked += 1
            used: dict[Pair, int] = {}
            for mm in fam:
                for e in mm:
                    used[e.pair] = used.get(e.pair, 0) + 1
            for w in range(g.n):
                nbrs = [x for x, _ in g.neighbors(w)]
                for x, y in combinations(nbrs, 2):
                    ex, ey = edge_copy(x, w).pair, edge_copy(y, w).pair
                    if used.get(ex, 0) == g.mult[ex] and used.get(ey, 0) == g.mult[ey]:
                        report.cover_violations.append((lab[x], lab[y], lab[w]))
    return report


def is_class1(
    g: Multigraph, budget: int | None = DEFAULT_BUDGET, multiset: Sequence[int] | None = None
) -> str:
    """``"class1"``, ``"class2"`` or ``"unknown"`` (budget exhausted)."""
    r = g.regularity()
    if r is None or g.n % 2:
        raise GraphError("class is defined for regular graphs of even order")
    m = tuple(multiset) if multiset is not None else petersen_multiset(g)
    if m is not None:
        return "class1" if pdpm_oracle(m).max_k >= r else "class2"
    res = max_pdpm(g, k_target=r, budget=budget)
    if res.feasible is None:
        return "unknown"
    return "class1" if res.feasible else "class2"
