import pickle
import random

import pytest

from ospq import kernels
from ospq.exactnum import _field

compiled = pytest.mark.skipif(kernels.CompiledReducer is None, reason="extension not built")


def _pair(order):
    f = _field(order)
    rows = [list(r) for r in f.rows]
    py = kernels.PyReducer(f.degree, rows)
    cy = kernels.CompiledReducer(f.degree, rows) if kernels.CompiledReducer else py
    return py, cy


def _vec(rng, d, lo=-5, hi=5):
    return [rng.randint(lo, hi) for _ in range(d)]


@compiled
@pytest.mark.parametrize("order", [8, 24, 40, 56, 120])
def test_mul_agrees(order):
    rng = random.Random(order)
    py, cy = _pair(order)
    for _ in range(30):
        a, b = _vec(rng, py.d), _vec(rng, py.d)
        assert cy.mul(a, b) == py.mul(a, b)


@compiled
def test_mul_many_big_integers_fall_back():
    rng = random.Random(1)
    py, cy = _pair(40)
    factors = [_vec(rng, py.d, -10**12, 10**12) for _ in range(6)]
    assert cy.mul_many(factors) == py.mul_many(factors)
    huge = [[10**30] + [0] * (py.d - 1), _vec(rng, py.d)]
    assert cy.mul_many(huge) == py.mul_many(huge)


@compiled
def test_combine_agrees():
    rng = random.Random(2)
    py, cy = _pair(56)
    counts = {rng.randrange(56): rng.randint(-9, 9) for _ in range(40)}
    assert cy.combine(counts) == py.combine(counts)
    assert cy.combine({3: 10**40}) == py.combine({3: 10**40})


@compiled
@pytest.mark.parametrize("scale", [3, 10**9])
def test_coloring_sum_agrees(scale):
    rng = random.Random(scale)
    py, cy = _pair(40)
    size, nv = 3, 4
    vt = [[_vec(rng, py.d, -scale, scale) for _ in range(size)] for _ in range(nv)]
    et = [[_vec(rng, py.d, -scale, scale) for _ in range(size)] for _ in range(size)]
    edges = [(0, 1), (1, 2), (1, 3)]
    for firsts in ([0, 1, 2], [1]):
        assert cy.coloring_sum(vt, edges, et, firsts) == py.coloring_sum(vt, edges, et, firsts)


def test_coloring_sum_matches_products():
    py, _ = _pair(24)
    rng = random.Random(5)
    vt = [[_vec(rng, py.d) for _ in range(2)] for _ in range(2)]
    et = [[_vec(rng, py.d) for _ in range(2)] for _ in range(2)]
    expected = [0] * py.d
    for a in range(2):
        for b in range(2):
            term = py.mul(py.mul(vt[0][a], vt[1][b]), et[a][b])
            expected = [x + y for x, y in zip(expected, term)]
    assert py.coloring_sum(vt, [(0, 1)], et, [0, 1]) == expected


@compiled
def test_pickle_roundtrip():
    _, cy = _pair(24)
    clone = pickle.loads(pickle.dumps(cy))
    a = list(range(cy.d))
    assert clone.mul(a, a) == cy.mul(a, a)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
