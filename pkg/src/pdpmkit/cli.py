"""Command-line interface: ``pdpmkit <verb> ...``.

Exit codes: 0 success or certified, 1 verification failure or refusal,
2 usage or domain error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import constructions as cons
from . import verify as ver
from .connectivity import UnsupportedInput, edge_connectivity, odd_edge_connectivity
from .matching import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    IntegrityError,
    count_pm,
    family_to_list,
    max_pdpm,
    pdpm_oracle,
)
from .multigraph import GraphError, Multigraph, canonical_json
from .petersen import build_catalog
from .wiring import Wiring, WiringError, connectivity_violations, g6

log = logging.getLogger("pdpmkit")

BUDGET_ENV = "PDPMKIT_BUDGET"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


# -- argument helpers -----------------------------------------------------------


def _budget(text: str) -> int:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a node count: {text!r}") from None
    if value < 1 or value != int(value):
        raise argparse.ArgumentTypeError(f"budget must be a positive integer, got {text}")
    return int(value)


def _multiset(text: str) -> tuple[int, ...]:
    parts = text.replace(" ", "").split(",")
    if len(parts) == 1 and len(parts[0]) == 6 and parts[0].isdigit():
        parts = list(parts[0])
    try:
        m = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"multiset must be six integers: {text!r}") from None
    if len(m) != 6 or min(m) < 0:
        raise argparse.ArgumentTypeError(f"multiset must be six non-negative integers: {text!r}")
    return m


def _default_budget() -> int:
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return _budget(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{BUDGET_ENV}: {exc}") from None
    return DEFAULT_BUDGET


def _load_graph(path: str) -> Multigraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return Multigraph.from_json(text)


def _write(text: str, out: str | None) -> None:
    """Write to ``out`` atomically, or to stdout."""
    if out is None or out == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    log.info("wrote %s", path)


def _emit(obj: dict, out: str | None = None) -> None:
    _write(canonical_json(obj), out)


def _map(fn, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _wiring(path: str | None) -> Wiring:
    return Wiring.load(path)


# -- verbs ------------------------------------------------------------------------


def cmd_build(a: argparse.Namespace) -> int:
    if a.what == "petersen-power":
        g = cons.p_power(a.m)
    elif a.what == "q1":
        g = cons.q1()
    elif a.what == "p-next":
        g = cons.p_next(a.r, a.l)
    elif a.what == "g6":
        b = g6(_wiring(a.wiring))
        if a.matching:
            _emit({"matching": family_to_list((b.m6,))[0]}, a.matching)
        g = b.g6
    else:
        if a.l < 3:
            raise UsageError("build family: l must be at least 3")
        base = None
        if a.l == 3:
            b = g6(_wiring(a.wiring))
            base = (b.g6, b.m6)
        g, m, prov = cons.family_witness(a.l, a.r, base)
        if a.provenance:
            _emit(prov.to_dict(), a.provenance)
        if a.matching:
            _emit({"matching": family_to_list((m,))[0]}, a.matching)
    _write(g.to_json(), a.output)
    return EXIT_OK


def cmd_analyze(a: argparse.Namespace) -> int:
    g = _load_graph(a.input)
    if a.what == "lambda":
        cut = edge_connectivity(g)
        _emit({"lambda": cut.value, "shore": [g.labels[i] for i in cut.side]})
    elif a.what == "odd-lambda":
        cut = odd_edge_connectivity(g)
        _emit({"odd_lambda": cut.value, "shore": [g.labels[i] for i in cut.side]})
    elif a.what == "regularity":
        _emit({"regular": g.regularity()})
    else:
        r = g.regularity()
        out = {
            "vertices": g.n,
            "edge_copies": g.edge_count(),
            "regular": r,
            "max_mu": g.max_mu(),
            "lambda": edge_connectivity(g).value,
        }
        if g.n % 2 == 0:
            out["odd_lambda"] = odd_edge_connectivity(g).value
            out["r_graph"] = r is not None and out["odd_lambda"] == r
        _emit(out)
    return EXIT_OK


def cmd_max_pdpm(a: argparse.Namespace) -> int:
    g = _load_graph(a.input)
    res = max_pdpm(g, k_target=a.k_target, budget=a.budget)
    out = {"k": res.k, "status": res.status, "nodes": res.nodes}
    if a.k_target is not None:
        out["k_target"] = a.k_target
        out["feasible"] = res.feasible
    if a.family:
        out["family"] = family_to_list(res.family)
    _emit(out)
    if res.exact or res.feasible:
        return EXIT_OK
    return EXIT_BUDGET


def cmd_pm_count(a: argparse.Namespace) -> int:
    g = _load_graph(a.input)
    _emit({"mode": a.mode, "count": count_pm(g, a.mode, a.budget)})
    return EXIT_OK


def cmd_oracle(a: argparse.Namespace) -> int:
    res = pdpm_oracle(a.m, a.k_target)
    out = {"m": list(a.m), "max_pdpm": res.max_k, "optimal_vectors": [list(n) for n in res.optimal]}
    if a.k_target is not None:
        out["k_target"] = a.k_target
        out["feasible"] = res.target_feasible
    _emit(out)
    return EXIT_OK


def _splice_report(case: ver.SpliceCase) -> dict:
    g, h, gp, _ = case.build()
    rep = ver.verify_splice(g, *case.uv, h, *case.xy, case.t, case.r, case.name())
    d = rep.to_dict()
    d["odd_lambda_spliced"] = odd_edge_connectivity(gp).value
    d["pass"] = d["pass"] and d["odd_lambda_spliced"] == case.r
    return d


def _projection_report(case: ver.SpliceCase) -> dict:
    return ver.verify_projection(case).to_dict()


def cmd_verify(a: argparse.Namespace) -> int:
    what = a.what
    if what == "petersen":
        checks = ver.verify_petersen()
        ok = all(c.passed for c in checks)
        _emit({"checks": [c.to_dict() for c in checks], "pass": ok}, a.output)
    elif what == "lambda-formula":
        if a.max_total > 12:
            raise UsageError("--max-total is capped at 12")
        rep = ver.verify_lambda_formula(a.max_total)
        ok = rep.passed
        _emit(rep.to_dict(), a.output)
    elif what == "splice":
        rows = _map(_splice_report, ver.splice_suite(), a.jobs)
        ok = all(r["pass"] for r in rows)
        _emit({"cases": rows, "pass": ok}, a.output)
    elif what == "projection":
        rows = _map(_projection_report, ver.projection_suite(), a.jobs)
        chain = ver.verify_induction_projection(4, 2).to_dict()
        ok = all(r["pass"] for r in rows) and chain["pass"]
        _emit({"cases": rows, "induction_chain": chain, "pass": ok}, a.output)
    elif what == "q1-lemma":
        rep = ver.q1_boundary_check(a.budget)
        _emit(rep.to_dict(), a.output)
        if rep.status != "exact":
            return EXIT_BUDGET
        ok = rep.passed
    elif what == "g6-replay":
        w = _wiring(a.wiring)
        if a.input:
            g = _load_graph(a.input)
            problems = connectivity_violations(g, w.degree, "G6")
            if problems:
                raise WiringError("G6 rejected", problems)
            rep = ver.g6_no4pdpm_replay((g, w))
        else:
            rep = ver.g6_no4pdpm_replay(g6(w))
        ok = rep.certified
        _emit(rep.to_dict(), a.output)
    else:
        if a.l < 3:
            raise UsageError("verify witness: l must be at least 3")
        build = replay = None
        if a.l == 3:
            build = g6(_wiring(a.wiring))
            replay = ver.g6_no4pdpm_replay(build)
        g, m, prov = cons.family_witness(a.l, a.r, (build.g6, build.m6) if build else None)
        if a.input:
            g = _load_graph(a.input)
        cert = ver.certify_witness(g, m, prov, build, replay, a.smoke_budget)
        ok = cert.passed
        _write(cert.to_json(), a.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(a: argparse.Namespace) -> int:
    g = _load_graph(a.input)
    _write(g.to_json() if a.format == "json" else g.to_dot(), a.output)
    return EXIT_OK


def cmd_petersen(a: argparse.Namespace) -> int:
    _emit(build_catalog().to_dict(), a.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pdpmkit", description="Disjoint perfect matchings in r-graphs.")
    p.add_argument("--json-errors", action="store_true", help="report errors as JSON on stderr")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def out(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-o", "--output", help="output file (default: stdout)")

    def budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--budget", type=_budget, default=None, help=f"search node budget (env {BUDGET_ENV})")

    b = sub.add_parser("build", help="construct a graph")
    b.add_argument("what", choices=["petersen-power", "q1", "p-next", "g6", "family"])
    b.add_argument("--m", type=_multiset, help="six matching counts, e.g. 2,1,1,1,0,0")
    b.add_argument("--l", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--wiring", help="wiring JSON (default: bundled)")
    b.add_argument("--provenance", help="write the construction chain here")
    b.add_argument("--matching", help="write the carried perfect matching here")
    out(b)
    b.set_defaults(func=cmd_build)

    an = sub.add_parser("analyze", help="connectivity and regularity of a graph")
    an.add_argument("what", choices=["lambda", "odd-lambda", "regularity", "summary"])
    an.add_argument("-i", "--input", required=True)
    an.set_defaults(func=cmd_analyze)

    mp = sub.add_parser("max-pdpm", help="largest set of disjoint perfect matchings")
    mp.add_argument("-i", "--input", required=True)
    mp.add_argument("--k-target", type=int)
    mp.add_argument("--family", action="store_true", help="include the matchings found")
    budget(mp)
    mp.set_defaults(func=cmd_max_pdpm)

    pc = sub.add_parser("pm-count", help="count perfect matchings")
    pc.add_argument("-i", "--input", required=True)
    pc.add_argument("--mode", choices=["support", "copies"], default="support")
    budget(pc)
    pc.set_defaults(func=cmd_pm_count)

    o = sub.add_parser("oracle", help="closed-form maximum for a Petersen power")
    o.add_argument("--m", type=_multiset, required=True)
    o.add_argument("--k-target", type=int)
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="run a verification")
    v.add_argument(
        "what",
        choices=["petersen", "lambda-formula", "splice", "projection", "q1-lemma", "g6-replay", "witness"],
    )
    v.add_argument("--max-total", type=int, default=6)
    v.add_argument("--l", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("-i", "--input")
    v.add_argument("--wiring")
    v.add_argument("--smoke-budget", type=_budget)
    v.add_argument("--jobs", type=int, default=1)
    budget(v)
    out(v)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="re-emit a graph as canonical JSON or DOT")
    e.add_argument("-i", "--input", required=True)
    e.add_argument("--format", choices=["json", "dot"], default="json")
    out(e)
    e.set_defaults(func=cmd_export)

    pt = sub.add_parser("petersen", help="print the perfect-matching catalog")
    out(pt)
    pt.set_defaults(func=cmd_petersen)
    return p


def _validate(a: argparse.Namespace) -> None:
    need = {
        ("build", "petersen-power"): ["m"],
        ("build", "p-next"): ["l", "r"],
        ("build", "family"): ["l", "r"],
        ("verify", "witness"): ["l", "r"],
    }
    for name in need.get((a.verb, getattr(a, "what", None)), []):
        if getattr(a, name) is None:
            raise UsageError(f"{a.verb} {a.what}: --{name} is required")
    if getattr(a, "jobs", 1) < 1:
        raise UsageError("--jobs must be at least 1")
    if hasattr(a, "budget") and a.budget is None:
        a.budget = _default_budget()


def _fail(message: str, kind: str, code: int, as_json: bool) -> int:
    if as_json:
        sys.stderr.write(canonical_json({"error": kind, "message": message, "exit_code": code}))
    else:
        sys.stderr.write(f"error: {message}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json-errors" in argv
    try:
        a = build_parser().parse_args(argv)
        _validate(a)
    except UsageError as exc:
        return _fail(str(exc), "usage", EXIT_USAGE, as_json)
    logging.basicConfig(
        level=logging.INFO if a.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        return a.func(a)
    except UsageError as exc:
        return _fail(str(exc), "usage", EXIT_USAGE, as_json)
    except BudgetExceeded as exc:
        return _fail(str(exc), "budget", EXIT_BUDGET, as_json)
    except (WiringError, IntegrityError) as exc:
        return _fail(str(exc), "refused", EXIT_FAIL, as_json)
    except (GraphError, UnsupportedInput, ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(str(exc), "domain", EXIT_USAGE, as_json)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
