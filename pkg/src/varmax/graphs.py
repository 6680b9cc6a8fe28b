"""Finite simple graphs: metric structure, named families, graph6, enumeration.

Vertices are 0..n-1. Reports that use 1-based labels a_1..a_n add 1.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

ENUMERATION_LIMIT = 8


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        canon = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            e = (min(u, v), max(u, v))
            if e in canon:
                raise GraphError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: str = "") -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), name)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_connected(self) -> bool:
        return len(_bfs(self.adjacency, 0)) == self.n

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges), self.name)

    def __str__(self) -> str:
        return self.name or emit_graph6(self)


def _bfs(adj, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


# --------------------------------------------------------------------------
# metric structure


@dataclass(frozen=True)
class DistanceTable:
    d: tuple[tuple[int, ...], ...]
    ecc: tuple[int, ...]


@dataclass(frozen=True)
class BallTable:
    """``members[v][r]`` is the sorted vertex list of the ball of radius r at v."""

    members: tuple[tuple[tuple[int, ...], ...], ...]

    def size(self, v: int, r: int) -> int:
        return len(self.members[v][r])

    def sizes(self, v: int) -> tuple[int, ...]:
        return tuple(len(b) for b in self.members[v])


def distances(g: Graph) -> DistanceTable:
    rows = []
    for s in range(g.n):
        dist = _bfs(g.adjacency, s)
        if len(dist) != g.n:
            raise GraphError("graph is disconnected; distances are infinite")
        rows.append(tuple(dist[t] for t in range(g.n)))
    return DistanceTable(tuple(rows), tuple(max(r) for r in rows))


def balls(g: Graph, dt: DistanceTable | None = None) -> BallTable:
    dt = dt or distances(g)
    out = []
    for v in range(g.n):
        row = dt.d[v]
        out.append(tuple(tuple(w for w in range(g.n) if row[w] <= r) for r in range(dt.ecc[v] + 1)))
    return BallTable(tuple(out))


# --------------------------------------------------------------------------
# named families

_FAMILY_RE = re.compile(r"^([KPCS])(\d+)$")


def named_graph(family: str, n: int | None = None) -> Graph:
    """K_n, S_n (center 0), C_n, P_n, plus the 4-vertex ``paw`` and ``diamond``.

    ``paw`` and ``diamond`` use the labelling a_1..a_4 -> 0..3 in which the
    paw's pendant vertex is a_2 and the diamond's degree-3 vertices are a_2, a_4.
    """
    fam = family.strip()
    if fam.lower() == "paw":
        return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)], "paw")
    if fam.lower() == "diamond":
        return Graph.from_edges(4, [(0, 1), (0, 3), (1, 2), (1, 3), (2, 3)], "diamond")
    if n is None:
        raise GraphError(f"family {family!r} needs a size parameter")
    if fam == "K":
        if n < 1:
            raise GraphError("K_n needs n >= 1")
        return Graph.from_edges(n, itertools.combinations(range(n), 2), f"K{n}")
    if fam == "P":
        if n < 1:
            raise GraphError("P_n needs n >= 1")
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), f"P{n}")
    if fam == "C":
        if n < 3:
            raise GraphError("C_n needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")
    if fam == "S":
        if n < 2:
            raise GraphError("S_n needs n >= 2")
        return Graph.from_edges(n, ((0, i) for i in range(1, n)), f"S{n}")
    raise GraphError(f"unknown graph family {family!r}")


def parse_graph_spec(spec: str) -> Graph:
    """Parse CLI graph syntax: ``K4``, ``P10``, ``paw``, ``g6:Ch``, ``construction:k=3,m=3``."""
    s = spec.strip()
    if s.lower() in ("paw", "diamond"):
        return named_graph(s)
    m = _FAMILY_RE.match(s)
    if m:
        return named_graph(m.group(1), int(m.group(2)))
    if s.startswith("g6:"):
        return parse_graph6(s[3:])
    if s.startswith("construction:"):
        from .constructions import ConstructionSpec, build_tree

        params = dict(kv.split("=") for kv in s.split(":", 1)[1].split(","))
        return build_tree(ConstructionSpec(k=int(params["k"]), m=int(params["m"]))).graph
    raise GraphError(f"cannot parse graph spec {spec!r}")


# --------------------------------------------------------------------------
# graph6 (single-byte size field only)


def emit_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("graph6 size field limited to n <= 62 here")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise GraphError("graph6 characters must lie in 63..126")
    n = ord(s[0]) - 63
    if n > 62:
        raise GraphError("multi-byte graph6 size field not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for c in body:
        val = ord(c) - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    if any(bits[nbits:]):
        raise GraphError("graph6 padding bits must be zero")
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    edges = [p for p, b in zip(pairs, bits) if b]
    if n == 0:
        raise GraphError("graph6 with zero vertices")
    return Graph.from_edges(n, edges)


# --------------------------------------------------------------------------
# canonical forms, automorphisms, enumeration


def _refined_colors(g: Graph) -> list[int]:
    """Colour refinement started from degrees; colours are labelling-independent."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adjacency[v]))) for v in range(g.n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(g: Graph, limit: int = ENUMERATION_LIMIT) -> str:
    """Lexicographically largest upper-triangle bit string over colour-respecting orderings."""
    if g.n > limit:
        raise GraphError(f"canonical_form limited to n <= {limit}")
    colors = _refined_colors(g)
    classes = [[v for v in range(g.n) if colors[v] == c] for c in sorted(set(colors))]
    adj = g.adjacency
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [v for part in parts for v in part]
        word = "".join("1" if order[i] in adj[order[j]] else "0"
                       for j in range(1, g.n) for i in range(j))
        if best is None or word > best:
            best = word
    return f"{g.n}:{best}"


def automorphisms(g: Graph, limit: int = ENUMERATION_LIMIT) -> list[tuple[int, ...]]:
    if g.n > limit:
        raise GraphError(f"automorphisms limited to n <= {limit}")
    colors = _refined_colors(g)
    adj = g.adjacency
    n = g.n
    found: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def extend(v: int):
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or colors[w] != colors[v]:
                continue
            if all((u in adj[v]) == (image[u] in adj[w]) for u in range(v)):
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
        image[v] = -1

    extend(0)
    return found


def orbit_representatives(g: Graph) -> list[int]:
    auts = automorphisms(g)
    seen: set[int] = set()
    reps = []
    for v in range(g.n):
        if v in seen:
            continue
        reps.append(v)
        seen.update(a[v] for a in auts)
    return reps


def _canonical_graph(n: int, form: str) -> Graph:
    word = form.split(":", 1)[1]
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    return Graph.from_edges(n, [p for p, b in zip(pairs, word) if b == "1"])


def enumerate_connected(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices.

    Built by vertex augmentation: every connected graph has a vertex whose
    removal keeps it connected, so extending each (n-1)-class by a new vertex
    with every nonempty neighbourhood reaches all classes.
    """
    if not 1 <= n <= 7:
        raise GraphError("enumerate_connected supports 1 <= n <= 7")
    if n == 1:
        return [Graph(1, (), "K1")]
    forms: set[str] = set()
    for base in enumerate_connected(n - 1):
        for size in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), size):
                g = Graph.from_edges(n, list(base.edges) + [(u, n - 1) for u in nbrs])
                forms.add(canonical_form(g))
    graphs = [_canonical_graph(n, f) for f in forms]
    graphs.sort(key=lambda g: (len(g.edges), canonical_form(g)))
    return graphs


def enumerate_connected_bruteforce(n: int) -> list[Graph]:
    """Reference enumeration over all edge subsets (n <= 6)."""
    if not 1 <= n <= 6:
        raise GraphError("brute-force enumeration supports 1 <= n <= 6")
    pairs = list(itertools.combinations(range(n), 2))
    forms = {}
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
        if g.is_connected():
            forms.setdefault(canonical_form(g), g)
    graphs = [_canonical_graph(n, f) for f in forms]
    graphs.sort(key=lambda g: (len(g.edges), canonical_form(g)))
    return graphs
