import itertools
import random

import numpy as np
import pytest

from ospq.invariant import (
    ColoringError,
    colored_value,
    invariant_report,
    rt_invariant,
    rt_invariant_tree,
)
from ospq.moddata import SizeLimitExceeded
from ospq.surgery import (
    CycleError,
    PlumbingGraph,
    blow_up,
    inertia,
    lens_chain,
    linking_matrix,
    seifert_star,
)
from ospq.verification import random_forest
from ospq.weyl import Weight


def _brute_force(g, t):
    """Sum of d-weighted coloured values, normalised with a float eigenvalue count."""
    total = t.one() * 0
    for cols in itertools.product(t.index_set, repeat=len(g)):
        col = dict(zip(g.order, cols))
        weight = t.one()
        for v in g.order:
            weight = weight * t.d[col[v]]
        total = total + weight * colored_value(g, col, t)
    m = np.array(linking_matrix(g).entries, dtype=float).reshape(len(g), len(g))
    sigma = int(np.sum(np.linalg.eigvalsh(m) <= 1e-9)) if len(g) else 0
    return total * t.z ** (-sigma)


def test_colored_value_examples(t12):
    e1 = Weight.eps(1, 1)
    zero = Weight.zero(1)
    for a in (-2, 0, 3):
        assert colored_value(PlumbingGraph({1: a}), {1: e1}, t12) == t12.twist[e1] ** a * t12.sdim[e1]
    assert colored_value(PlumbingGraph({1: 0}), {1: zero}, t12) == 1
    chain = PlumbingGraph({1: 0, 2: 0}, [(1, 2)])
    for lam, mu in itertools.product(t12.index_set, repeat=2):
        v = colored_value(chain, {1: lam, 2: mu}, t12)
        assert v == t12.hopf[(lam, mu)] * t12.sdim[mu]
        assert v == t12.hopf[(mu, lam)] * t12.sdim[lam]


def test_colored_value_errors(t12):
    with pytest.raises(ColoringError):
        colored_value(PlumbingGraph({1: 0, 2: 0}), {1: Weight.zero(1)}, t12)
    with pytest.raises(ColoringError):
        colored_value(PlumbingGraph({1: 0}), {1: Weight.of(2)}, t12)


def test_manifold_sanity(tables):
    one = tables.one()
    assert rt_invariant(PlumbingGraph(), tables) == one
    assert rt_invariant(PlumbingGraph({1: 1}), tables) == one
    assert rt_invariant(PlumbingGraph({1: -1}), tables) == one
    d0 = tables.d[Weight.zero(tables.n)]
    s1s2 = rt_invariant(PlumbingGraph({1: 0}), tables)
    assert s1s2 == d0.inv()
    assert s1s2 == tables.zeta / tables.z


@pytest.mark.parametrize("seed", range(6))
def test_matches_brute_force(tables, seed):
    g = random_forest(random.Random(seed), max_vertices=3)
    assert rt_invariant(g, tables) == _brute_force(g, tables)


@pytest.mark.parametrize("seed", range(10))
def test_tree_contraction_agrees(t23, seed):
    g = random_forest(random.Random(100 + seed), max_vertices=5)
    assert rt_invariant_tree(g, t23) == rt_invariant(g, t23)


def test_disjoint_union_multiplicative(tables):
    rng = random.Random(7)
    for _ in range(5):
        g1, g2 = random_forest(rng), random_forest(rng)
        both = g1.disjoint_union(g2)
        assert rt_invariant(both, tables) == rt_invariant(g1, tables) * rt_invariant(g2, tables)


def test_blow_up_invariance(t12):
    rng = random.Random(11)
    for _ in range(10):
        g = random_forest(rng)
        base = rt_invariant(g, t12)
        for s in (1, -1):
            assert rt_invariant(blow_up(g, s), t12) == base
            assert rt_invariant(blow_up(g, s, rng.choice(g.order)), t12) == base


def _mirror(g):
    return PlumbingGraph({v: -f for v, f in g.vertices.items()}, g.edges)


def test_mirror_relation(tables):
    # negating every framing conjugates each factor except d = d0 * sdim, which
    # contributes z per vertex; with sigma counting nonpositive eigenvalues the
    # powers of z cancel up to the nullity
    rng = random.Random(13)
    for _ in range(8):
        g = random_forest(rng)
        nullity = inertia(linking_matrix(g)).n_zero
        lhs = rt_invariant(_mirror(g), tables)
        assert lhs == rt_invariant(g, tables).conjugate() * tables.z ** (-nullity)


def test_workers_agree(t23):
    g = seifert_star(-1, [(2, 1), (3, 1)])
    assert rt_invariant(g, t23, workers=2) == rt_invariant(g, t23)


def test_report(t12):
    rep = invariant_report(PlumbingGraph(), t12)
    assert rep.value == 1 and rep.sigma == 0 and rep.colorings == 1
    rep = invariant_report(lens_chain(5, 2), t12)
    assert rep.colorings == 4
    assert abs(rep.approx - rep.value.embed()) == 0
    assert set(rep.timing) == {"mean", "min", "max"}
    fast = invariant_report(lens_chain(5, 2), t12, per_coloring_timing=False)
    assert fast.value == rep.value and set(fast.timing) == {"mean"}
    data = rep.to_json()
    assert data["sigma"] == rep.sigma and data["colorings"] == 4


def test_limits(t23):
    with pytest.raises(SizeLimitExceeded):
        rt_invariant(lens_chain(7, 3), t23, max_colorings=5)
    cyc = PlumbingGraph({1: 0, 2: 0, 3: 0}, [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(CycleError):
        rt_invariant(cyc, t23)
