"""The invariant ``F(M) = z**(-sigma(A)) * Sigma(L)`` for plumbing forests.

``Sigma(L)`` sums, over all colourings of the vertices by the index set,
``prod_v d[lam_v]`` times the coloured value of the forest.
"""

from __future__ import annotations

import itertools
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Optional

from .exactnum import CycloNumber, _field
from .moddata import ModularTables, SizeLimitExceeded
from .surgery import PlumbingGraph, inertia, linking_matrix
from .weyl import Weight

__all__ = [
    "Coloring",
    "ColoringError",
    "colored_value",
    "rt_invariant",
    "rt_invariant_tree",
    "invariant_report",
    "InvariantReport",
    "DEFAULT_MAX_COLORINGS",
]

DEFAULT_MAX_COLORINGS = 10**6

Coloring = Mapping[int, Weight]


class ColoringError(ValueError):
    pass


def _edge_factor(t: ModularTables, a: Weight, b: Weight) -> CycloNumber:
    # unnormalised Hopf link: eigenvalue of C_a on V_b times sdim(b); symmetric in (a, b)
    return t.hopf[(a, b)] * t.sdim[b]


def colored_value(g: PlumbingGraph, coloring: Coloring, t: ModularTables) -> CycloNumber:
    g.check_forest()
    index = set(t.index_set)
    for v in g.vertices:
        if v not in coloring:
            raise ColoringError(f"vertex {v} is not coloured")
        if coloring[v] not in index:
            raise ColoringError(f"colour {coloring[v]} of vertex {v} is outside the index set")
    value = t.one()
    for v, a in g.vertices.items():
        lam = coloring[v]
        value = value * t.twist[lam] ** a * t.sdim[lam] ** (1 - g.degree(v))
    for u, v in sorted(g.edges):
        value = value * _edge_factor(t, coloring[u], coloring[v])
    return value


def _vertex_tables(g: PlumbingGraph, t: ModularTables):
    """Per-vertex lists ``d[lam] * twist(lam)**a * sdim[lam]**(1 - deg)`` over the index set."""
    out = []
    sdim_inv = {lam: t.sdim[lam].inv() for lam in t.index_set}
    for v, a in g.vertices.items():
        deg = g.degree(v)
        row = []
        for lam in t.index_set:
            s = t.sdim[lam] ** (1 - deg) if deg <= 1 else sdim_inv[lam] ** (deg - 1)
            row.append(t.d[lam] * t.twist[lam] ** a * s)
        out.append(row)
    return out


def _edge_tables(g: PlumbingGraph, t: ModularTables):
    pos = {v: i for i, v in enumerate(g.order)}
    mat = [[_edge_factor(t, a, b) for b in t.index_set] for a in t.index_set]
    return [(pos[u], pos[v]) for u, v in sorted(g.edges)], mat


def _scale(values) -> tuple[list[list[int]], int]:
    den = math.lcm(*(v.denominator for v in values))
    return [[c * (den // v.denominator) for c in v.numerators] for v in values], den


def _partial_sum(args):
    vt, edges, mat, first_colors, size, order, want_timing = args
    red = _field(order).reducer
    if not want_timing:
        return red.coloring_sum(vt, edges, mat, first_colors), []
    total = [0] * red.d
    timings = []
    nv = len(vt)
    for c0 in first_colors:
        for rest in itertools.product(range(size), repeat=nv - 1):
            t0 = time.perf_counter()
            col = (c0,) + rest
            factors = [vt[i][col[i]] for i in range(nv)]
            factors.extend(mat[col[a]][col[b]] for a, b in edges)
            term = red.mul_many(factors)
            total = [x + y for x, y in zip(total, term)]
            timings.append(time.perf_counter() - t0)
    return total, timings


def _coloring_sum(g: PlumbingGraph, t: ModularTables, workers: int, max_colorings: int,
                  want_timing: bool = False):
    size = len(t.index_set)
    count = size ** len(g)
    if count > max_colorings:
        raise SizeLimitExceeded(f"{count} colourings exceed the budget of {max_colorings}")
    if not g.vertices:
        return t.one(), count, []
    # every factor table shares one denominator, so each term is an integer
    # vector over the fixed denominator prod(vertex dens) * edge_den**|E|
    den = 1
    vt = []
    for row in _vertex_tables(g, t):
        nums, dv = _scale(row)
        vt.append(nums)
        den *= dv
    edges, mat_c = _edge_tables(g, t)
    flat, de = _scale([x for r in mat_c for x in r])
    mat = [flat[i * size:(i + 1) * size] for i in range(size)]
    den *= de ** len(edges)
    chunks = [[c] for c in range(size)] if workers > 1 else [list(range(size))]
    jobs = [(vt, edges, mat, ch, size, t.order, want_timing) for ch in chunks]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_partial_sum, jobs))
    else:
        parts = [_partial_sum(j) for j in jobs]
    total = [0] * len(mat[0][0])
    timings: list[float] = []
    for s, tm in parts:
        total = [x + y for x, y in zip(total, s)]
        timings.extend(tm)
    return CycloNumber._make(t.order, total, den), count, timings


def rt_invariant(g: PlumbingGraph, t: ModularTables, workers: int = 1,
                 max_colorings: int = DEFAULT_MAX_COLORINGS) -> CycloNumber:
    g.check_forest()
    sigma = inertia(linking_matrix(g)).sigma
    total, _, _ = _coloring_sum(g, t, workers, max_colorings)
    return total * t.z ** (-sigma)


def rt_invariant_tree(g: PlumbingGraph, t: ModularTables) -> CycloNumber:
    """Same value as :func:`rt_invariant`, contracting each tree leaf-to-root.

    Polynomial in the graph size; used to cross-check the colouring sum.
    """
    g.check_forest()
    sigma = inertia(linking_matrix(g)).sigma
    idx = t.index_set
    vt = dict(zip(g.order, _vertex_tables(g, t)))
    mat = [[_edge_factor(t, a, b) for b in idx] for a in idx]
    result = t.one()
    for comp in g.components():
        root = comp.order[0]

        def message(v, parent):
            # vector over colours of v: sum over the subtree hanging below v
            vec = list(vt[v])
            for w in comp.neighbors(v):
                if w == parent:
                    continue
                child = message(w, v)
                for i in range(len(idx)):
                    acc = CycloNumber.zero(t.order)
                    for j in range(len(idx)):
                        acc = acc + mat[i][j] * child[j]
                    vec[i] = vec[i] * acc
            return vec

        comp_sum = CycloNumber.zero(t.order)
        for x in message(root, None):
            comp_sum = comp_sum + x
        result = result * comp_sum
    return result * t.z ** (-sigma)


@dataclass
class InvariantReport:
    value: CycloNumber
    approx: complex
    sigma: int
    colorings: int
    total_seconds: float
    timing: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "float": [self.approx.real, self.approx.imag],
            "sigma": self.sigma,
            "colorings": self.colorings,
            "seconds": self.total_seconds,
            "per_coloring_seconds": self.timing,
        }


def invariant_report(g: PlumbingGraph, t: ModularTables, workers: int = 1,
                     max_colorings: int = DEFAULT_MAX_COLORINGS,
                     per_coloring_timing: bool = True) -> InvariantReport:
    """Value, approximation, sigma, colouring count and timing.

    Without ``per_coloring_timing`` the colouring loop runs inside the kernel
    and only the mean time per colouring is reported.
    """
    g.check_forest()
    start = time.perf_counter()
    sigma = inertia(linking_matrix(g)).sigma
    total, count, timings = _coloring_sum(g, t, workers, max_colorings,
                                          want_timing=per_coloring_timing)
    value = total * t.z ** (-sigma)
    elapsed = time.perf_counter() - start
    stats: dict = {}
    if not per_coloring_timing and count:
        stats = {"mean": elapsed / count}
    elif timings:
        stats = {
            "mean": statistics.fmean(timings),
            "min": min(timings),
            "max": max(timings),
        }
    return InvariantReport(value, value.embed(), sigma, count, elapsed, stats)
