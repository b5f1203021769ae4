"""Pure-Python reference kernels for arithmetic modulo a cyclotomic polynomial.

Elements are dense integer coefficient lists of length ``d = deg(Phi_M)``.
``rows[j]`` holds the coefficients of ``x**j mod Phi_M`` for ``0 <= j < M``.
"""

import itertools


class Reducer:
    __slots__ = ("d", "order", "_tail", "_rows")

    def __init__(self, d, rows):
        self.d = d
        self.order = len(rows)
        # sparse form of the rows needed to fold a product of degree <= 2d - 2
        self._tail = [
            [(t, c) for t, c in enumerate(rows[j]) if c] for j in range(d, min(2 * d - 1, len(rows)))
        ]
        self._rows = [[(t, c) for t, c in enumerate(r) if c] for r in rows]

    def mul(self, a, b):
        d = self.d
        prod = [0] * (2 * d - 1)
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if ai:
                for j, bj in nz_b:
                    prod[i + j] += ai * bj
        res = prod[:d]
        tail = self._tail
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c:
                for t, r in tail[j - d]:
                    res[t] += c * r
        return res

    def mul_many(self, factors):
        """Reduced product of a non-empty sequence of coefficient vectors."""
        it = iter(factors)
        acc = list(next(it))
        for f in it:
            acc = self.mul(acc, f)
        return acc

    def coloring_sum(self, vertex_tables, edges, edge_table, first_colors):
        """Sum over colourings of the product of per-vertex and per-edge factors.

        ``vertex_tables[v][c]`` and ``edge_table[c1][c2]`` are coefficient
        vectors; vertex 0 ranges over ``first_colors``, the others over all
        colours.  Returns the reduced coefficient vector of the sum.
        """
        size = len(edge_table)
        nv = len(vertex_tables)
        total = [0] * self.d
        for c0 in first_colors:
            for rest in itertools.product(range(size), repeat=nv - 1):
                col = (c0,) + rest
                factors = [vertex_tables[i][col[i]] for i in range(nv)]
                factors.extend(edge_table[col[a]][col[b]] for a, b in edges)
                term = self.mul_many(factors)
                total = [x + y for x, y in zip(total, term)]
        return total

    def combine(self, counts):
        """Reduce ``sum(count * x**e)`` given ``{e: count}`` with ``0 <= e < order``."""
        res = [0] * self.d
        rows = self._rows
        for e, cnt in counts.items():
            if cnt:
                for t, r in rows[e]:
                    res[t] += cnt * r
        return res

