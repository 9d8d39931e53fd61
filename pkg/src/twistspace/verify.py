"""Invariant suites over the bundled corpus and seeded random instances.

Each suite returns a :class:`SuiteResult`; failures carry a JSON-able
counterexample.  When several random instances fail, the smallest one (by
edge count) is reported, which is the only minimization performed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels, corpus
from .errors import TheoremViolation, TwistSpaceError
from .gf2 import Gf2Subspace, Gf2Vector, in_span, kernel_basis, rank, subspace_equal
from .graph import bridges, cycle_basis, genus, graph_to_dict, is_cycle, quotient
from .randgraph import random_real_graphs
from .realpart import maximal_coset, ribbon_boundary_count, trace_counts
from .wspace import action_is_trivial, direction_basis, relative_action, w_kernel, w_structural

SCOPES = ("gf2", "graph", "wspace", "realpart", "tropical")
RANDOM_GRAPHS = 200
COSET_K_LIMIT = 12


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[dict] = field(default_factory=list)

    def check(self, ok: bool, what: str, **witness) -> None:
        self.checks += 1
        if not ok:
            self.failures.append({"check": what, **witness})

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        fails = sorted(self.failures, key=lambda f: f.get("size", 0))
        return {
            "checks": self.checks,
            "ok": self.ok,
            "failure_count": len(fails),
            "counterexample": fails[0] if fails else None,
        }


def _instances(seed: int, count: int = RANDOM_GRAPHS):
    for name, (g, t) in corpus.load_all().items():
        yield name, g, t
    for i, (g, t) in enumerate(random_real_graphs(count, seed=seed)):
        yield f"random[{seed}:{i}]", g, t


def _witness(name: str, g, t) -> dict:
    return {"instance": name, "size": g.n_edges, "graph": graph_to_dict(g, t)}


def suite_gf2(seed: int) -> SuiteResult:
    res = SuiteResult("gf2")
    rng = np.random.default_rng(seed)
    for _ in range(200):
        m, n = int(rng.integers(1, 12)), int(rng.integers(1, 16))
        mat = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
        labels = [f"c{j}" for j in range(n)]
        rows = [Gf2Vector.from_bits(labels, list(r)) for r in mat]
        ker = kernel_basis(rows, labels)
        r = rank(rows)
        res.check(r + ker.dim == n, "rank-nullity", matrix=mat.tolist())
        res.check(all(row.dot(k) == 0 for row in rows for k in ker.basis()), "kernel annihilates rows", matrix=mat.tolist())
        red_np, rk_np = _kernels.numpy_rref(mat.copy())
        res.check(rk_np == r, "numpy rref rank", matrix=mat.tolist())
        if _kernels.numba_rref is not None:
            red_nb, rk_nb = _kernels.numba_rref(mat.copy())
            res.check(rk_nb == rk_np and np.array_equal(red_nb, red_np), "numba/numpy rref agree", matrix=mat.tolist())
        span = Gf2Subspace.span(labels, rows)
        res.check(all(in_span(span, row) for row in rows), "rows lie in their span", matrix=mat.tolist())
    return res


def suite_graph(seed: int) -> SuiteResult:
    res = SuiteResult("graph")
    for name, g, t in _instances(seed):
        cb = cycle_basis(g)
        res.check(cb.genus == g.n_edges - g.n_vertices + 1 == genus(g), "genus = E - V + 1", **_witness(name, g, t))
        res.check(all(is_cycle(g, c) for c in cb.cycles), "fundamental cycles are cycles", **_witness(name, g, t))
        brute = frozenset(e for e in range(g.n_edges) if g.components_without((e,)) > 1)
        res.check(brute == bridges(g), "bridges match removal", **_witness(name, g, t))
        q = quotient(g, t)
        res.check(sum(len(f) for f in q.fibers) == g.n_edges, "quotient fibers partition edges", **_witness(name, g, t))
    return res


def suite_wspace(seed: int) -> SuiteResult:
    res = SuiteResult("wspace")
    for name, g, t in _instances(seed):
        res.check(subspace_equal(w_kernel(g, t), w_structural(g, t)), "W kernel == W structural", **_witness(name, g, t))
    for name, (g, t) in corpus.load_all().items():
        k = direction_basis(g, t).k
        if k > COSET_K_LIMIT:
            continue
        masks = np.arange(1 << k, dtype=np.int64)
        trivial = action_is_trivial(g, t, masks)
        w = w_kernel(g, t)
        member = np.array([w.reduce(int(m)) == 0 for m in masks])
        res.check(bool(np.array_equal(trivial, member)), "relative action zero <=> in W", **_witness(name, g, t))
        for m in range(min(1 << k, 64)):
            a = relative_action(g, t, direction_basis(g, t).from_mask(m))
            res.check(bool(np.array_equal(a, a.T)), "relative action symmetric", **_witness(name, g, t))
    return res


def suite_realpart(seed: int) -> SuiteResult:
    res = SuiteResult("realpart")
    for name, g, t in _instances(seed, count=RANDOM_GRAPHS // 2):
        k = direction_basis(g, t).k
        if k > COSET_K_LIMIT:
            continue
        try:
            mc = maximal_coset(g, t, cap=COSET_K_LIMIT)
            res.check(True, "coset law")
        except TheoremViolation as exc:
            res.check(False, "coset law", error=str(exc), **_witness(name, g, t))
            continue
        res.check(max(mc.counts) <= genus(g) + 1, "count <= g + 1", **_witness(name, g, t))
        if t.is_identity() and g.rotation_given is not None:
            basis = direction_basis(g, t)
            counts = trace_counts(g, t, np.arange(1 << k))
            for m in range(1 << k):
                signs = [g.edge_ids[basis.fibers[i][0]] for i in range(k) if (m >> i) & 1]
                if ribbon_boundary_count(g, signs=signs) != counts[m]:
                    res.check(False, "trace == ribbon boundary", twists=signs, **_witness(name, g, t))
                    break
            else:
                res.check(True, "trace == ribbon boundary")
    return res


def suite_tropical(seed: int) -> SuiteResult:
    from .realpart import trace_real_part
    from .tropical import (
        build_curve,
        component_count,
        equivalent_signs,
        is_haas_maximal,
        is_twist_admissible,
        quadratic_lift,
        signs_to_twists,
        twists_to_signs,
        viro_count,
        w_twist,
    )
    from .tropical.patchwork import exhaustive_twist_sets, twist_ids

    res = SuiteResult("tropical")
    rng = random.Random(seed)
    for d in (1, 2, 3):
        c = build_curve(quadratic_lift(d))
        gen = genus(c.graph)
        w = w_kernel(c.graph, c.tau)
        for tset in exhaustive_twist_sets(c):
            if not is_twist_admissible(c, tset):
                continue
            ids = sorted(twist_ids(c, tset))
            vec = w_twist(c, tset)
            haas = is_haas_maximal(c, tset)
            traced = trace_real_part(c.graph, c.tau, vec).count
            res.check(haas == in_span(w, vec) == (traced == gen + 1), "Haas <=> W <=> maximal", degree=d, twists=ids)
            nu = twists_to_signs(c, tset)
            res.check(sorted(signs_to_twists(c, nu)) == ids, "twists -> signs -> twists", degree=d, twists=ids)
            res.check(viro_count(c, nu, compact=True) == component_count(c, tset, compact=True) == traced,
                      "sign rule, arcs and tracer agree", degree=d, twists=ids)
        for _ in range(64):
            nu = {p: rng.choice((1, -1)) for p in c.poly.support}
            back = twists_to_signs(c, signs_to_twists(c, nu))
            res.check(equivalent_signs(nu, back), "signs -> twists -> signs", degree=d,
                      signs={f"{p[0]},{p[1]}": v for p, v in sorted(nu.items())})
    for d in (1, 2, 3, 6):
        c = build_curve(quadratic_lift(d))
        expected = (d - 1) * (d - 2) // 2 + 1
        res.check(component_count(c, (), compact=True) == expected, "Harnack origin count", degree=d)
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "gf2": suite_gf2,
    "graph": suite_graph,
    "wspace": suite_wspace,
    "realpart": suite_realpart,
    "tropical": suite_tropical,
}


def run(scope: str = "all", seed: int = 0) -> dict:
    names = SCOPES if scope == "all" else (scope,)
    results = {}
    for name in names:
        try:
            results[name] = SUITES[name](seed).to_dict()
        except TwistSpaceError as exc:
            results[name] = {"checks": 0, "ok": False, "failure_count": 1,
                             "counterexample": {"check": "suite raised", "error": f"{type(exc).__name__}: {exc}"}}
    return {"scope": scope, "seed": seed, "ok": all(r["ok"] for r in results.values()), "suites": results}
