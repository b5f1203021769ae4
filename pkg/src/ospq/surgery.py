"""Plumbing-forest surgery presentations, linking matrices, inertia and Kirby moves.

Each vertex is an unknot with an integer framing; each edge Hopf-links two
unknots with linking number +1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "GraphError",
    "GraphSyntaxError",
    "CycleError",
    "NotBlowDownable",
    "PlumbingGraph",
    "LinkingMatrix",
    "Inertia",
    "linking_matrix",
    "inertia",
    "blow_up",
    "blow_down",
    "blow_up_edge",
    "blow_down_edge",
    "continued_fraction",
    "lens_chain",
    "seifert_star",
    "parse_graph",
    "format_graph",
    "graph_from_json",
    "graph_to_json",
    "load_graph",
]


class GraphError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GraphSyntaxError(GraphError):
    pass


class CycleError(GraphError):
    pass


class NotBlowDownable(GraphError):
    pass


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: Mapping[int, int]
    edges: frozenset

    def __init__(self, vertices: Mapping[int, int] | None = None,
                 edges: Iterable[Sequence[int]] = ()):
        verts = {int(v): int(f) for v, f in (vertices or {}).items()}
        es = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            if a not in verts or b not in verts:
                raise GraphError(f"edge ({a}, {b}) references a missing vertex")
            e = _edge(a, b)
            if e in es:
                raise GraphError(f"parallel edge {e}")
            es.add(e)
        object.__setattr__(self, "vertices", dict(sorted(verts.items())))
        object.__setattr__(self, "edges", frozenset(es))

    def __hash__(self):
        return hash((tuple(self.vertices.items()), self.edges))

    def __eq__(self, other):
        if not isinstance(other, PlumbingGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def neighbors(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def find_cycle_edge(self) -> Optional[tuple[int, int]]:
        """First edge (in sorted order) that closes a cycle, or None for a forest."""
        parent = {v: v for v in self.vertices}

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in sorted(self.edges):
            ra, rb = root(a), root(b)
            if ra == rb:
                return (a, b)
            parent[ra] = rb
        return None

    def is_forest(self) -> bool:
        return self.find_cycle_edge() is None

    def check_forest(self) -> None:
        e = self.find_cycle_edge()
        if e is not None:
            raise CycleError(f"edge {e} closes a cycle; only plumbing forests are supported")

    def components(self) -> list["PlumbingGraph"]:
        seen: set[int] = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], set()
            while stack:
                x = stack.pop()
                if x in comp:
                    continue
                comp.add(x)
                stack.extend(self.neighbors(x))
            seen |= comp
            out.append(PlumbingGraph({x: self.vertices[x] for x in comp},
                                     [e for e in self.edges if e[0] in comp]))
        return out

    def relabel(self, offset: int) -> "PlumbingGraph":
        return PlumbingGraph({v + offset: f for v, f in self.vertices.items()},
                             [(a + offset, b + offset) for a, b in self.edges])

    def disjoint_union(self, other: "PlumbingGraph") -> "PlumbingGraph":
        offset = 0
        if self.vertices and other.vertices:
            offset = max(self.vertices) + 1 - min(other.vertices)
        moved = other.relabel(offset)
        return PlumbingGraph({**self.vertices, **moved.vertices}, list(self.edges) + list(moved.edges))

    def with_framing(self, v: int, framing: int) -> "PlumbingGraph":
        verts = dict(self.vertices)
        verts[v] = framing
        return PlumbingGraph(verts, self.edges)

    def next_id(self) -> int:
        return max(self.vertices) + 1 if self.vertices else 1


@dataclass(frozen=True)
class LinkingMatrix:
    order: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def sigma(self) -> int:
        """Number of nonpositive eigenvalues."""
        return self.n_minus + self.n_zero

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus


def linking_matrix(g: PlumbingGraph) -> LinkingMatrix:
    order = g.order
    pos = {v: i for i, v in enumerate(order)}
    m = [[0] * len(order) for _ in order]
    for v, f in g.vertices.items():
        m[pos[v]][pos[v]] = f
    for a, b in g.edges:
        m[pos[a]][pos[b]] = m[pos[b]][pos[a]] = 1
    return LinkingMatrix(order, tuple(tuple(r) for r in m))


def inertia(m) -> Inertia:
    """Exact inertia of a symmetric rational matrix by congruence diagonalisation."""
    rows = m.entries if isinstance(m, LinkingMatrix) else m
    A = [[Fraction(x) for x in r] for r in rows]
    size = len(A)
    for i in range(size):
        if len(A[i]) != size:
            raise ValueError("matrix is not square")
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix is not symmetric")
    plus = minus = 0
    active = list(range(size))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j makes the (i, i) entry 2 A[i][j] != 0
            for t in active:
                A[i][t] += A[j][t]
            for t in active:
                A[t][i] += A[t][j]
            piv = i
        p = A[piv][piv]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(piv)
        for r in active:
            f = A[r][piv] / p
            if f:
                for s in active:
                    A[r][s] -= f * A[piv][s]
    return Inertia(plus, minus, size - plus - minus)


def blow_up(g: PlumbingGraph, sign: int, site: Optional[int] = None) -> PlumbingGraph:
    """Add a ``sign``-framed unknot, isolated or as a leaf on ``site``.

    A leaf blow-up shifts the framing of ``site`` by ``sign``, which is the
    inverse of :func:`blow_down`.
    """
    if sign not in (1, -1):
        raise ValueError("blow-up sign must be +1 or -1")
    new = g.next_id()
    verts = dict(g.vertices)
    verts[new] = sign
    edges = list(g.edges)
    if site is not None:
        if site not in verts or site == new:
            raise GraphError(f"blow-up site {site} is not a vertex")
        verts[site] += sign
        edges.append((site, new))
    return PlumbingGraph(verts, edges)


def blow_down(g: PlumbingGraph, v: int) -> PlumbingGraph:
    """Remove a +-1 framed vertex of degree at most one."""
    if v not in g.vertices:
        raise GraphError(f"vertex {v} does not exist")
    f = g.vertices[v]
    if f not in (1, -1):
        raise NotBlowDownable(f"vertex {v} has framing {f}, not +-1")
    nbrs = g.neighbors(v)
    if len(nbrs) > 1:
        raise NotBlowDownable(f"vertex {v} has degree {len(nbrs)} > 1")
    verts = {u: a for u, a in g.vertices.items() if u != v}
    for u in nbrs:
        verts[u] -= f
    return PlumbingGraph(verts, [e for e in g.edges if v not in e])


def blow_up_edge(g: PlumbingGraph, u: int, v: int, sign: int) -> PlumbingGraph:
    """Insert a ``sign``-framed vertex on the edge ``u - v``; both ends gain ``sign``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    e = (min(u, v), max(u, v))
    if e not in g.edges:
        raise GraphError(f"no edge {u} - {v}")
    w = g.next_id()
    verts = dict(g.vertices)
    verts[u] += sign
    verts[v] += sign
    verts[w] = sign
    edges = [x for x in g.edges if x != e] + [(u, w), (w, v)]
    return PlumbingGraph(verts, edges)


def blow_down_edge(g: PlumbingGraph, w: int) -> PlumbingGraph:
    """Inverse of :func:`blow_up_edge`: remove a +-1 vertex of degree two."""
    f = g.vertices.get(w)
    if f not in (1, -1):
        raise NotBlowDownable(f"vertex {w} has framing {f}, not +-1")
    nbrs = g.neighbors(w)
    if len(nbrs) != 2:
        raise NotBlowDownable(f"vertex {w} has degree {len(nbrs)}, expected 2")
    u, v = nbrs
    verts = {x: a for x, a in g.vertices.items() if x != w}
    verts[u] -= f
    verts[v] -= f
    edges = [e for e in g.edges if w not in e] + [(u, v)]
    return PlumbingGraph(verts, edges)


def continued_fraction(p: int, q: int) -> list[int]:
    """Entries ``a_i >= 2`` with ``p/q = a_1 - 1/(a_2 - 1/(...))``."""
    if p < 1 or q < 1 or math.gcd(p, q) != 1 or (q >= p and (p, q) != (1, 1)):
        raise ValueError(f"invalid lens parameters ({p}, {q})")
    if (p, q) == (1, 1):
        return [1]
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def lens_chain(p: int, q: int) -> PlumbingGraph:
    fr = continued_fraction(p, q)
    return PlumbingGraph({i + 1: a for i, a in enumerate(fr)},
                         [(i, i + 1) for i in range(1, len(fr))])


def seifert_star(e0: int, legs: Sequence[tuple[int, int]]) -> PlumbingGraph:
    verts = {0: e0}
    edges = []
    nxt = 1
    for p, q in legs:
        fr = continued_fraction(p, q)
        prev = 0
        for a in fr:
            verts[nxt] = a
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PlumbingGraph(verts, edges)


# ---------------------------------------------------------------------------
# text and JSON formats


def parse_graph(text: str) -> PlumbingGraph:
    """Parse the ``.plumb`` format: ``v <id> <framing>`` and ``e <id> <id>`` lines."""
    verts: dict[int, int] = {}
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            nums = [int(t) for t in tok[1:]]
        except ValueError:
            raise GraphSyntaxError(f"non-integer field in {line!r}", lineno) from None
        if tok[0] == "v" and len(nums) == 2:
            if nums[0] in verts:
                raise GraphSyntaxError(f"duplicate vertex {nums[0]}", lineno)
            verts[nums[0]] = nums[1]
        elif tok[0] == "e" and len(nums) == 2:
            edges.append((nums[0], nums[1], lineno))
        else:
            raise GraphSyntaxError(f"cannot parse {line!r}", lineno)
    seen = set()
    for a, b, lineno in edges:
        if a not in verts or b not in verts:
            missing = a if a not in verts else b
            raise GraphSyntaxError(f"edge references undeclared vertex {missing}", lineno)
        if a == b:
            raise GraphSyntaxError(f"self-loop at vertex {a}", lineno)
        if _edge(a, b) in seen:
            raise GraphSyntaxError(f"duplicate edge {a} {b}", lineno)
        seen.add(_edge(a, b))
    g = PlumbingGraph(verts, [(a, b) for a, b, _ in edges])
    parent = {v: v for v in verts}

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b, lineno in edges:
        ra, rb = root(a), root(b)
        if ra == rb:
            raise CycleError(f"edge {a} {b} closes a cycle", lineno)
        parent[ra] = rb
    return g


def format_graph(g: PlumbingGraph) -> str:
    lines = [f"v {v} {f}" for v, f in g.vertices.items()]
    lines += [f"e {a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + ("\n" if lines else "")


def graph_to_json(g: PlumbingGraph) -> dict:
    return {
        "vertices": [{"id": v, "framing": f} for v, f in g.vertices.items()],
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_json(data: Mapping) -> PlumbingGraph:
    try:
        verts = {}
        for item in data.get("vertices", []):
            if item["id"] in verts:
                raise GraphSyntaxError(f"duplicate vertex {item['id']}")
            verts[int(item["id"])] = int(item["framing"])
        g = PlumbingGraph(verts, [tuple(e) for e in data.get("edges", [])])
    except (KeyError, TypeError) as exc:
        raise GraphSyntaxError(f"malformed graph JSON: {exc}") from None
    g.check_forest()
    return g


def load_graph(path: str) -> PlumbingGraph:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphSyntaxError(str(exc), exc.lineno) from None
        return graph_from_json(data)
    return parse_graph(text)
