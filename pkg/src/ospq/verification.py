"""Named suites of exact identity checks, shared by the CLI and the test suite."""

from __future__ import annotations

import random
from typing import Callable, Iterator

from .exactnum import NonExactDivision, gauss_closed_form, gauss_sum, sqrt_integer
from .invariant import rt_invariant, rt_invariant_tree
from .moddata import (
    CheckResult,
    ModularTables,
    generic_Q,
    generic_S,
    lattice_gauss_sum,
    table_checks,
    verify_boundary_vanishing,
    verify_condition_iv,
)
from .surgery import PlumbingGraph, blow_down, blow_up, lens_chain
from .weyl import Weight, enumerate_domain

__all__ = ["SUITES", "run_suite", "random_forest", "gauss_product"]


def gauss_product(n: int, N: int):
    prod = gauss_sum(N, 1)
    for j in range(1, n):
        prod = prod * gauss_sum(N, 2 * j + 1)
    return prod


def suite_gauss(t: ModularTables, **_) -> Iterator[CheckResult]:
    N = t.N
    root = sqrt_integer(N, t.order)
    yield CheckResult(f"sqrt_N_squared[N={N}]", root * root == N)
    for m in sorted({1, 3, 5} | set(range(1, 2 * t.n, 2))):
        lhs, rhs = gauss_sum(N, m), gauss_closed_form(N, m)
        ok = lhs == rhs
        yield CheckResult(f"gauss_closed_form[N={N},m={m}]", ok, {} if ok else {"sum": lhs, "closed": rhs})
    lhs = lattice_gauss_sum(t.root_data, N)
    rhs = gauss_product(t.n, N)
    ok = lhs == rhs
    yield CheckResult(f"lattice_product[n={t.n},N={N}]", ok, {} if ok else {"lattice": lhs, "product": rhs})
    ok = t.c * lhs == 1
    yield CheckResult("c_inverse", ok)


def suite_condition_iv(t: ModularTables, **_) -> Iterator[CheckResult]:
    for mu in t.index_set:
        yield verify_condition_iv(t, mu)


def suite_boundary(t: ModularTables, **_) -> Iterator[CheckResult]:
    yield verify_boundary_vanishing(t)
    for lam in t.index_set:
        ok = not t.sdim[lam].is_zero()
        yield CheckResult(f"sdim_nonzero[{lam.label()}]", ok)
    for lam in t.boundary_set:
        ok = t.sdim[lam].is_zero()
        yield CheckResult(f"sdim_boundary_zero[{lam.label()}]", ok, {} if ok else {"sdim": t.sdim[lam]})


def suite_identities(t: ModularTables, **_) -> Iterator[CheckResult]:
    for check in table_checks(t):
        if not check.name.startswith(("hopf_symmetry", "condition_iv")):
            yield check


def _is_dominant(lam: Weight) -> bool:
    d = lam.doubled
    return all(d[i] >= d[i + 1] for i in range(len(d) - 1)) and (not d or d[-1] >= 0)


def suite_hopf(t: ModularTables, **_) -> Iterator[CheckResult]:
    for check in table_checks(t):
        if check.name.startswith("hopf_symmetry"):
            yield check
    rd = t.root_data
    closure = enumerate_domain(t.n, t.N, strict=False)
    # Q_mu vanishes identically unless mu + rho is regular, i.e. mu dominant
    mus = [m for m in closure if _is_dominant(m)]
    failures = []
    for lam in closure:
        for mu in mus:
            try:
                generic_S(lam, mu, rd).exact_div(generic_Q(mu, rd))
            except NonExactDivision:
                failures.append((lam.label(), mu.label()))
    yield CheckResult("exact_division", not failures,
                      {"pairs": len(closure) * len(mus)} if not failures else {"failed": failures[:10]})


def random_forest(rng: random.Random, max_vertices: int = 4, lo: int = -3, hi: int = 3) -> PlumbingGraph:
    nv = rng.randint(1, max_vertices)
    verts = {i: rng.randint(lo, hi) for i in range(1, nv + 1)}
    edges = []
    for i in range(2, nv + 1):
        if rng.random() < 0.7:
            edges.append((rng.randint(1, i - 1), i))
    return PlumbingGraph(verts, edges)


def suite_kirby(t: ModularTables, seed: int = 0, forests: int = 25, **_) -> Iterator[CheckResult]:
    one = t.one()
    for s in (1, -1):
        v = rt_invariant(PlumbingGraph({1: s}), t)
        yield CheckResult(f"unknot[{s:+d}]", v == one, {} if v == one else {"value": v})
    v = rt_invariant(PlumbingGraph(), t)
    yield CheckResult("S3_empty", v == one)
    v = rt_invariant(PlumbingGraph({1: 0}), t)
    expected = t.d[Weight.zero(t.n)].inv()
    yield CheckResult("S1xS2", v == expected, {} if v == expected else {"value": v, "expected": expected})

    rng = random.Random(seed)
    for i in range(forests):
        g = random_forest(rng)
        base = rt_invariant(g, t)
        witness = {"forest": i, "graph": {k: f for k, f in g.vertices.items()}, "edges": sorted(g.edges)}
        bad = []
        if rt_invariant_tree(g, t) != base:
            bad.append("tree_contraction")
        for s in (1, -1):
            if rt_invariant(blow_up(g, s), t) != base:
                bad.append(f"disjoint_blow_up[{s:+d}]")
            site = rng.choice(g.order)
            up = blow_up(g, s, site)
            if rt_invariant(up, t) != base:
                bad.append(f"leaf_blow_up[{s:+d}@{site}]")
            if blow_down(up, up.order[-1]) != g:
                bad.append("blow_down_inverse")
        for v in g.order:
            if g.vertices[v] in (1, -1) and g.degree(v) <= 1:
                if rt_invariant(blow_down(g, v), t) != base:
                    bad.append(f"blow_down[{v}]")
        yield CheckResult(f"kirby_forest[{i}]", not bad, {} if not bad else {**witness, "failed": bad})

    g1, g2 = lens_chain(5, 2), PlumbingGraph({1: 2, 2: -1}, [(1, 2)])
    lhs = rt_invariant(g1.disjoint_union(g2), t)
    rhs = rt_invariant(g1, t) * rt_invariant(g2, t)
    yield CheckResult("disjoint_union_multiplicative", lhs == rhs)


SUITES: dict[str, Callable[..., Iterator[CheckResult]]] = {
    "gauss": suite_gauss,
    "conditioniv": suite_condition_iv,
    "boundary": suite_boundary,
    "identities": suite_identities,
    "hopf": suite_hopf,
    "kirby": suite_kirby,
}


def run_suite(name: str, t: ModularTables, **kw) -> list[tuple[str, CheckResult]]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}")
        out.extend((nm, r) for r in SUITES[nm](t, **kw))
    return out
