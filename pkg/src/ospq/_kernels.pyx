# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for arithmetic modulo a cyclotomic polynomial.

Same interface as ``_kernels_py.Reducer``.  Products run in 64-bit integers
while an a-priori bound rules out overflow; otherwise the call is delegated
to the pure-Python implementation, so results are always exact.
"""

from libc.stdlib cimport malloc, free

from . import _kernels_py

cdef long long _LIMIT = 2 ** 62
cdef double _DLIMIT = 2.0 ** 61


cdef class Reducer:
    cdef readonly int d
    cdef readonly int order
    # CSR form of the rows x**j mod Phi, j = 0 .. order-1
    cdef int *_ptr
    cdef int *_idx
    cdef long long *_val
    cdef double _rscale
    cdef object _rows
    cdef object _rmax
    cdef object _fallback

    def __cinit__(self, int d, rows):
        self.d = d
        self.order = len(rows)
        nnz = sum(1 for r in rows for c in r if c)
        self._ptr = <int *> malloc((self.order + 1) * sizeof(int))
        self._idx = <int *> malloc((nnz + 1) * sizeof(int))
        self._val = <long long *> malloc((nnz + 1) * sizeof(long long))
        if self._ptr == NULL or self._idx == NULL or self._val == NULL:
            raise MemoryError()
        cdef int j, t, k = 0
        rmax = 0
        widest = 0
        for j in range(self.order):
            self._ptr[j] = k
            for t in range(d):
                c = rows[j][t]
                if c:
                    self._idx[k] = t
                    self._val[k] = c
                    k += 1
                    if j >= d and abs(c) > rmax:
                        rmax = abs(c)
            if j >= d and k - self._ptr[j] > widest:
                widest = k - self._ptr[j]
        self._ptr[self.order] = k
        self._rmax = rmax
        # |sum over folded rows| <= (1 + rmax * widest) * max|entry of the raw product|
        self._rscale = 1.0 + float(rmax) * max(widest, 1) * d
        self._rows = [list(r) for r in rows]
        self._fallback = _kernels_py.Reducer(d, rows)

    def __dealloc__(self):
        free(self._ptr)
        free(self._idx)
        free(self._val)

    def __reduce__(self):
        return (Reducer, (self.d, self._rows))

    cdef void _mul_into(self, long long *a, long long *b, long long *prod) noexcept:
        cdef int d = self.d
        cdef int i, j, k, nb = 0
        cdef long long c
        cdef int *nzb = <int *> (prod + 2 * d)
        for j in range(d):
            if b[j] != 0:
                nzb[nb] = j
                nb += 1
        for i in range(2 * d - 1):
            prod[i] = 0
        for i in range(d):
            c = a[i]
            if c != 0:
                for k in range(nb):
                    j = nzb[k]
                    prod[i + j] += c * b[j]
        for j in range(d, 2 * d - 1):
            c = prod[j]
            if c != 0:
                for k in range(self._ptr[j], self._ptr[j + 1]):
                    prod[self._idx[k]] += c * self._val[k]

    cdef long long *_alloc(self) except NULL:
        # a, b, product (2d - 1) and scratch for d int indices
        cdef long long *buf = <long long *> malloc((5 * self.d + 2) * sizeof(long long))
        if buf == NULL:
            raise MemoryError()
        return buf

    def mul(self, a, b):
        return self.mul_many((a, b))

    def mul_many(self, factors):
        """Reduced product of a non-empty sequence of coefficient vectors.

        Runs in 64-bit arithmetic while a per-step bound allows it and
        finishes in Python integers from the first step that could overflow.
        """
        cdef int d = self.d
        cdef int nf = len(factors)
        cdef int i, t, step
        cdef double amax, bmax
        if nf == 0:
            raise ValueError("empty product")
        if d == 0:
            return []
        for f in factors:
            for x in f:
                if x > _LIMIT or x < -_LIMIT:
                    return self._fallback.mul_many(factors)
        cdef long long *buf = self._alloc()
        cdef long long *acc = buf
        cdef long long *pb = buf + d
        cdef long long *prod = buf + 2 * d
        try:
            first = factors[0]
            amax = 0
            for i in range(d):
                acc[i] = first[i]
                if abs(acc[i]) > amax:
                    amax = abs(acc[i])
            for step in range(1, nf):
                f = factors[step]
                bmax = 0
                for i in range(d):
                    pb[i] = f[i]
                    if abs(pb[i]) > bmax:
                        bmax = abs(pb[i])
                if d * amax * bmax * self._rscale >= _DLIMIT:
                    partial = [acc[t] for t in range(d)]
                    return self._fallback.mul_many([partial] + list(factors[step:]))
                self._mul_into(acc, pb, prod)
                amax = 0
                for t in range(d):
                    acc[t] = prod[t]
                    if abs(prod[t]) > amax:
                        amax = abs(prod[t])
            return [acc[t] for t in range(d)]
        finally:
            free(buf)

    def coloring_sum(self, vertex_tables, edges, edge_table, first_colors):
        """Sum over colourings of the product of per-vertex and per-edge factors.

        Same contract as the pure-Python version.  Each step is guarded by the
        same bound as :meth:`mul_many`; a colouring whose product could
        overflow is recomputed in Python integers, and the 64-bit running total
        is flushed into a Python total before it could overflow.
        """
        cdef int d = self.d
        cdef int nv = len(vertex_tables)
        cdef int ne = len(edges)
        cdef int size = len(edge_table)
        cdef int nfirst = len(first_colors)
        if nv == 0 or size == 0 or nfirst == 0 or d == 0:
            return self._fallback.coloring_sum(vertex_tables, edges, edge_table, first_colors)
        for row in vertex_tables:
            for vec in row:
                for x in vec:
                    if x > _LIMIT or x < -_LIMIT:
                        return self._fallback.coloring_sum(vertex_tables, edges, edge_table, first_colors)
        for row in edge_table:
            for vec in row:
                for x in vec:
                    if x > _LIMIT or x < -_LIMIT:
                        return self._fallback.coloring_sum(vertex_tables, edges, edge_table, first_colors)

        cdef long long *vt = <long long *> malloc((nv * size * d + 1) * sizeof(long long))
        cdef long long *et = <long long *> malloc((size * size * d + 1) * sizeof(long long))
        cdef double *vmx = <double *> malloc((nv * size + 1) * sizeof(double))
        cdef double *emx = <double *> malloc((size * size + 1) * sizeof(double))
        cdef int *ea = <int *> malloc((ne + 1) * sizeof(int))
        cdef int *eb = <int *> malloc((ne + 1) * sizeof(int))
        cdef int *col = <int *> malloc((nv + 1) * sizeof(int))
        cdef long long *buf = self._alloc()
        cdef long long *total = <long long *> malloc((d + 1) * sizeof(long long))
        cdef int i, c, t, v, fi
        cdef bint ok
        cdef double amax, bmax, tmax
        cdef long long *acc = buf
        cdef long long *prod = buf + 2 * d
        cdef long long *f
        big = [0] * d
        try:
            if (vt == NULL or et == NULL or vmx == NULL or emx == NULL or ea == NULL
                    or eb == NULL or col == NULL or total == NULL):
                raise MemoryError()
            for v in range(nv):
                for c in range(size):
                    vec = vertex_tables[v][c]
                    amax = 0
                    for t in range(d):
                        vt[(v * size + c) * d + t] = vec[t]
                        if abs(vt[(v * size + c) * d + t]) > amax:
                            amax = abs(vt[(v * size + c) * d + t])
                    vmx[v * size + c] = amax
            for i in range(size):
                for c in range(size):
                    vec = edge_table[i][c]
                    amax = 0
                    for t in range(d):
                        et[(i * size + c) * d + t] = vec[t]
                        if abs(et[(i * size + c) * d + t]) > amax:
                            amax = abs(et[(i * size + c) * d + t])
                    emx[i * size + c] = amax
            for i in range(ne):
                ea[i] = edges[i][0]
                eb[i] = edges[i][1]
            for t in range(d):
                total[t] = 0
            tmax = 0
            for fi in range(nfirst):
                col[0] = first_colors[fi]
                for v in range(1, nv):
                    col[v] = 0
                while True:
                    ok = True
                    for t in range(d):
                        acc[t] = vt[col[0] * d + t]
                    amax = vmx[col[0]]
                    for v in range(1, nv + ne):
                        if v < nv:
                            f = vt + (v * size + col[v]) * d
                            bmax = vmx[v * size + col[v]]
                        else:
                            i = (col[ea[v - nv]] * size + col[eb[v - nv]])
                            f = et + i * d
                            bmax = emx[i]
                        if d * amax * bmax * self._rscale >= _DLIMIT:
                            ok = False
                            break
                        self._mul_into(acc, f, prod)
                        amax = 0
                        for t in range(d):
                            acc[t] = prod[t]
                            if abs(prod[t]) > amax:
                                amax = abs(prod[t])
                    if ok:
                        if tmax + amax >= _DLIMIT:
                            for t in range(d):
                                big[t] += total[t]
                                total[t] = 0
                            tmax = 0
                        for t in range(d):
                            total[t] += acc[t]
                        tmax += amax
                    else:
                        factors = [vertex_tables[v][col[v]] for v in range(nv)]
                        factors.extend(edge_table[col[ea[i]]][col[eb[i]]] for i in range(ne))
                        term = self._fallback.mul_many(factors)
                        for t in range(d):
                            big[t] += term[t]
                    # mixed-radix increment over vertices 1..nv-1
                    v = nv - 1
                    while v >= 1:
                        col[v] += 1
                        if col[v] < size:
                            break
                        col[v] = 0
                        v -= 1
                    if v < 1:
                        break
            return [big[t] + total[t] for t in range(d)]
        finally:
            free(vt)
            free(et)
            free(vmx)
            free(emx)
            free(ea)
            free(eb)
            free(col)
            free(buf)
            free(total)

    def combine(self, counts):
        """Reduce ``sum(count * x**e)`` given ``{e: count}`` with ``0 <= e < order``."""
        cdef int d = self.d
        cdef int t, e, k
        cdef long long cnt
        total = sum(map(abs, counts.values()))
        if total * (self._rmax + 1) >= _LIMIT:
            return self._fallback.combine(counts)
        cdef long long *res = <long long *> malloc((d + 1) * sizeof(long long))
        if res == NULL:
            raise MemoryError()
        try:
            for t in range(d):
                res[t] = 0
            for key, value in counts.items():
                e = key
                cnt = value
                if cnt != 0:
                    for k in range(self._ptr[e], self._ptr[e + 1]):
                        res[self._idx[k]] += cnt * self._val[k]
            return [res[t] for t in range(d)]
        finally:
            free(res)
