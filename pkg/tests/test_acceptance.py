"""Acceptance criteria 1-10, each with its time budget.

Run with pytest (one PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from ospq.exactnum import CycloNumber, gauss_closed_form, gauss_sum
from ospq.invariant import rt_invariant
from ospq.moddata import build_tables, generic_S, lattice_gauss_sum, superdim
from ospq.surgery import (
    PlumbingGraph,
    blow_down,
    blow_down_edge,
    blow_up,
    blow_up_edge,
    inertia,
    lens_chain,
)
from ospq.verification import gauss_product, random_forest
from ospq.weyl import Weight, build_root_data, dual_weight

CONFIGS = [(1, 2), (1, 3), (2, 3)]
RESULTS: dict[int, tuple[bool, float, str]] = {}


@lru_cache(maxsize=None)
def tables(n, k):
    return build_tables(n, k)


# -- criteria ------------------------------------------------------------------


def criterion_1():
    for N in (6, 10, 14):
        for m in (1, 3, 5):
            assert gauss_sum(N, m) == gauss_closed_form(N, m), (N, m)
    return "9 exact equalities"


def criterion_2():
    for n, N in [(1, 6), (1, 10), (2, 6), (2, 10), (2, 14)]:
        assert lattice_gauss_sum(build_root_data(n), N) == gauss_product(n, N), (n, N)
    return "5 configurations"


def criterion_3():
    pairs = 0
    for n, k in CONFIGS:
        t = tables(n, k)
        rd = t.root_data
        assert t.boundary_set
        for lam in t.boundary_set:
            for mu in t.index_set:
                value = generic_S(lam, mu, rd, signed=False).specialize(t.order, 2)
                assert value.is_zero(), (n, k, lam, mu)
                pairs += 1
    return f"{pairs} boundary pairs"


def criterion_4():
    for n, k in CONFIGS:
        t = tables(n, k)
        for lam in t.index_set:
            assert not t.sdim[lam].is_zero(), (n, k, lam)
        for lam in t.boundary_set:
            assert t.sdim[lam].is_zero(), (n, k, lam)
    for k in (2, 3):
        t = tables(1, k)
        q = CycloNumber.root(t.order, 4)  # q = z**4 in Q(z_{4N})
        assert superdim(Weight.eps(1, 1), t.root_data, t.N) == -(q - 1 + q.inv())
    return "3 configurations plus the rank-one fundamental"


def criterion_5():
    checks = 0
    for n, k in CONFIGS:
        t = tables(n, k)
        for mu in t.index_set:
            rhs = t.one() * 0
            for lam in t.index_set:
                rhs = rhs + t.d[lam] * t.twist[lam] * t.hopf[(lam, mu)]
            assert rhs == t.twist[mu].inv(), (n, k, mu)
            checks += 1
    return f"{checks} weights"


def criterion_6():
    for n, k in CONFIGS:
        t = tables(n, k)
        d0 = t.d[Weight.zero(n)]
        assert not t.z.is_zero() and not t.zeta.is_zero()
        assert t.z == d0 * t.zeta
        for lam in t.index_set:
            assert t.d[lam] == d0 * t.sdim[lam]
            assert t.d[dual_weight(lam)] == t.d[lam]
    return "3 configurations"


def _leaf_blow_downs(g):
    return [v for v in g.order if g.vertices[v] in (1, -1) and g.degree(v) <= 1]


def criterion_7():
    for n, k in [(1, 2), (2, 3)]:
        t = tables(n, k)
        one = t.one()
        assert rt_invariant(PlumbingGraph({1: 1}), t) == one
        assert rt_invariant(PlumbingGraph({1: -1}), t) == one
        rng = random.Random(17 + n)
        for i in range(25):
            g = random_forest(rng, max_vertices=4, lo=-3, hi=3)
            base = rt_invariant(g, t)
            for s in (1, -1):
                assert rt_invariant(blow_up(g, s), t) == base, (n, k, i, s)
                up = blow_up(g, s, rng.choice(g.order))
                assert rt_invariant(up, t) == base
                for v in _leaf_blow_downs(up):
                    assert rt_invariant(blow_down(up, v), t) == base, (n, k, i, v)
            for v in _leaf_blow_downs(g):
                assert rt_invariant(blow_down(g, v), t) == rt_invariant(g, t)
    return "2 configurations x 25 forests"


def criterion_8():
    for n, k in CONFIGS:
        t = tables(n, k)
        d0 = t.d[Weight.zero(n)]
        assert rt_invariant(PlumbingGraph(), t) == 1
        assert rt_invariant(PlumbingGraph({1: 0}), t) == d0.inv()
        g1 = lens_chain(5, 2)
        g2 = PlumbingGraph({1: -2, 2: 0, 3: 3}, [(1, 2), (2, 3)])
        assert rt_invariant(g1.disjoint_union(g2), t) == rt_invariant(g1, t) * rt_invariant(g2, t)
    return "3 configurations"


def criterion_9():
    rng = random.Random(9)
    singular = 0
    for _ in range(200):
        dim = rng.randint(1, 8)
        a = np.zeros((dim, dim), dtype=int)
        for i in range(dim):
            for j in range(i, dim):
                a[i, j] = a[j, i] = rng.randint(-5, 5)
        ev = np.linalg.eigvalsh(a.astype(float))
        # eigenvalues within 1e-6 of zero are counted by the integer rank instead
        rank = np.linalg.matrix_rank(a.astype(float))
        plus, minus = int(np.sum(ev > 1e-6)), int(np.sum(ev < -1e-6))
        assert plus + minus == rank
        singular += rank < dim
        got = inertia(a.tolist())
        assert (got.n_plus, got.n_minus, got.n_zero) == (plus, minus, dim - rank)
    return f"200 matrices ({singular} singular)"


def _random_presentation(g, rng, moves):
    for _ in range(moves):
        kind = rng.choice(["disjoint", "leaf", "edge"] if g.edges else ["disjoint", "leaf"])
        s = rng.choice((1, -1))
        if kind == "disjoint":
            g = blow_up(g, s)
        elif kind == "leaf":
            g = blow_up(g, s, rng.choice(g.order))
        else:
            u, v = rng.choice(sorted(g.edges))
            g = blow_up_edge(g, u, v, s)
    return g


def _blow_down_fully(g, stop):
    # undo inserted +-1 vertices newest first until the original chain remains
    while len(g) > stop:
        v = g.order[-1]
        g = blow_down(g, v) if g.degree(v) <= 1 else blow_down_edge(g, v)
    return g


def _mirror(g):
    return PlumbingGraph({v: -f for v, f in g.vertices.items()}, g.edges)


def criterion_10():
    rng = random.Random(10)
    count = 0
    for n, k in [(1, 2), (2, 3)]:
        t = tables(n, k)
        for p in range(2, 8):
            for q in range(1, p):
                if math.gcd(p, q) != 1:
                    continue
                chain = lens_chain(p, q)
                base = rt_invariant(chain, t)
                for _ in range(3):
                    g = _random_presentation(chain, rng, rng.randint(1, 3))
                    assert _blow_down_fully(g, len(chain)) == chain
                    assert rt_invariant(g, t) == base, (n, k, p, q, g)
                    count += 1
                # the chain of p/(p-q), mirrored, presents the same lens space
                assert rt_invariant(_mirror(lens_chain(p, p - q)), t) == base, (n, k, p, q)
    return f"{count} presentations related by blow-down chains"


CRITERIA = [
    (1, "Gauss closed form", criterion_1, 1.0),
    (2, "lattice sum equals Gauss product", criterion_2, 5.0),
    (3, "boundary vanishing", criterion_3, 10.0),
    (4, "superdimensions on the alcove and its boundary", criterion_4, 5.0),
    (5, "condition iv", criterion_5, 10.0),
    (6, "z, zeta and d identities", criterion_6, 5.0),
    (7, "Kirby invariance on random forests", criterion_7, 60.0),
    (8, "S3, S1xS2 and disjoint unions", criterion_8, 5.0),
    (9, "exact inertia against eigenvalues", criterion_9, 5.0),
    (10, "lens-space presentations", criterion_10, 30.0),
]


def run_criterion(number, func, budget):
    start = time.perf_counter()
    try:
        detail = func()
        ok = True
    except AssertionError as exc:
        detail = f"assertion failed: {exc}"
        ok = False
    elapsed = time.perf_counter() - start
    if ok and elapsed >= budget:
        ok = False
        detail = f"{detail}; took {elapsed:.2f}s, budget {budget:.0f}s"
    RESULTS[number] = (ok, elapsed, detail)
    return ok, elapsed, detail


def summary_lines():
    lines = []
    for number, title, _, budget in CRITERIA:
        if number in RESULTS:
            ok, elapsed, detail = RESULTS[number]
            lines.append(f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} "
                         f"({elapsed:.2f}s < {budget:.0f}s) {detail}")
    return lines


@pytest.mark.parametrize("number,title,func,budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, func, budget):
    ok, elapsed, detail = run_criterion(number, func, budget)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, func, budget in CRITERIA:
        ok, _, _ = run_criterion(number, func, budget)
        failed += not ok
        print(summary_lines()[-1])
    sys.exit(1 if failed else 0)
