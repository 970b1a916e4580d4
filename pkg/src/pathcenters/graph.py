"""Finite directed multigraphs and the graph predicates the theorems consume.

Graphs are immutable after construction and every operation here is a pure
function, so shared instances are safe under concurrent use.  Edges carry
their own identity: parallel edges and loops are fully supported.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import GraphError, ResourceCapExceeded

INFINITE = math.inf

DEFAULT_VERTEX_CAP = 16


@dataclass(frozen=True, eq=True)
class Graph:
    """A finite directed multigraph (vertices, edges, source map, range map)."""

    vertices: tuple
    edges: tuple
    src: dict
    rng: dict

    __hash__ = None

    @classmethod
    def build(cls, vertices, edges):
        """Construct from vertex ids and (edge_id, source, range) triples."""
        vs = sorted(vertices)
        if len(vs) != len(set(vs)):
            raise GraphError("duplicate vertex id")
        vset = set(vs)
        src, rng = {}, {}
        for eid, s, r in edges:
            if eid in src:
                raise GraphError(f"duplicate edge id {eid!r}")
            if eid in vset:
                raise GraphError(f"id {eid!r} used for both a vertex and an edge")
            if s not in vset:
                raise GraphError(f"edge {eid!r}: unknown source {s!r}")
            if r not in vset:
                raise GraphError(f"edge {eid!r}: unknown range {r!r}")
            src[eid] = s
            rng[eid] = r
        g = cls(tuple(vs), tuple(sorted(src)), src, rng)
        out = {v: [] for v in vs}
        inc = {v: [] for v in vs}
        for eid in g.edges:
            out[src[eid]].append(eid)
            inc[rng[eid]].append(eid)
        object.__setattr__(g, "_out", {v: tuple(es) for v, es in out.items()})
        object.__setattr__(g, "_in", {v: tuple(es) for v, es in inc.items()})
        return g

    def check_vertex(self, v):
        if v not in self._out:
            raise GraphError(f"unknown vertex {v!r}")

    def check_edge(self, e):
        if e not in self.src:
            raise GraphError(f"unknown edge {e!r}")

    def out_edges(self, v):
        self.check_vertex(v)
        return self._out[v]

    def in_edges(self, v):
        self.check_vertex(v)
        return self._in[v]

    def is_sink(self, v):
        return not self.out_edges(v)

    def is_source(self, v):
        return not self.in_edges(v)

    def is_regular(self, v):
        # finite graphs have no infinite emitters, so regular == not a sink
        return bool(self.out_edges(v))

    def edge_triples(self):
        return [(e, self.src[e], self.rng[e]) for e in self.edges]


@dataclass(frozen=True)
class Path:
    """A composable edge sequence, or a trivial path sitting at a vertex."""

    source: str
    target: str
    edges: tuple

    @classmethod
    def vertex(cls, g: Graph, v) -> "Path":
        g.check_vertex(v)
        return cls(v, v, ())

    @classmethod
    def from_edges(cls, g: Graph, edges) -> "Path":
        edges = tuple(edges)
        if not edges:
            raise GraphError("edge path needs at least one edge")
        for e in edges:
            g.check_edge(e)
        for a, b in zip(edges, edges[1:]):
            if g.rng[a] != g.src[b]:
                raise GraphError(f"edges {a!r}, {b!r} do not compose")
        return cls(g.src[edges[0]], g.rng[edges[-1]], edges)

    @property
    def length(self):
        return len(self.edges)

    @property
    def is_trivial(self):
        return not self.edges

    @property
    def first_edge(self):
        if not self.edges:
            raise GraphError("trivial path has no first edge")
        return self.edges[0]

    def concat(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise GraphError("paths do not compose")
        return Path(self.source, other.target, self.edges + other.edges)

    def starts_with(self, prefix: "Path") -> bool:
        return (
            len(prefix.edges) <= len(self.edges)
            and self.edges[: len(prefix.edges)] == prefix.edges
            and self.source == prefix.source
        )

    def strip_prefix(self, prefix: "Path") -> "Path":
        rest = self.edges[len(prefix.edges):]
        return Path(prefix.target, self.target, rest)

    def sort_key(self):
        return (len(self.edges), self.source, self.edges)

    def __repr__(self):
        if self.is_trivial:
            return f"@{self.source}"
        return ".".join(self.edges)


@dataclass(frozen=True)
class Cycle:
    """A closed path with pairwise distinct edge sources, in canonical rotation.

    Canonical form rotates the edge list so the lexicographically least edge
    id leads; that gives a unique representative per rotation class.
    """

    path: Path

    @classmethod
    def from_edges(cls, g: Graph, edges) -> "Cycle":
        p = Path.from_edges(g, edges)
        if p.source != p.target:
            raise GraphError("cycle must be a closed path")
        sources = [g.src[e] for e in p.edges]
        if len(set(sources)) != len(sources):
            raise GraphError("closed path repeats an edge source; not a cycle")
        k = min(range(len(edges)), key=lambda i: p.edges[i])
        rotated = p.edges[k:] + p.edges[:k]
        return cls(Path.from_edges(g, rotated))

    @property
    def edges(self):
        return self.path.edges

    @property
    def base(self):
        return self.path.source

    @property
    def length(self):
        return self.path.length

    def vertex_set(self, g: Graph) -> frozenset:
        return frozenset(g.src[e] for e in self.edges)

    def rotation_based_at(self, g: Graph, v) -> Path:
        for i, e in enumerate(self.edges):
            if g.src[e] == v:
                return Path.from_edges(g, self.edges[i:] + self.edges[:i])
        raise GraphError(f"vertex {v!r} is not on the cycle")

    def __repr__(self):
        return f"Cycle({'.'.join(self.edges)})"


@dataclass(frozen=True)
class VertexClassification:
    sink: bool
    source: bool
    regular: bool
    infinite_emitter: bool = False


@dataclass(frozen=True)
class ExtendedGraph:
    """The extended graph: one ghost edge e* reversing each edge e."""

    graph: Graph
    ghost_of: dict


def classify_vertex(g: Graph, v) -> VertexClassification:
    g.check_vertex(v)
    return VertexClassification(
        sink=g.is_sink(v),
        source=g.is_source(v),
        regular=g.is_regular(v),
    )


def _undirected_adjacency(g: Graph):
    adj = {v: set() for v in g.vertices}
    for e in g.edges:
        adj[g.src[e]].add(g.rng[e])
        adj[g.rng[e]].add(g.src[e])
    return adj


def connected_components(g: Graph):
    """Partition of the vertices under undirected reachability."""
    adj = _undirected_adjacency(g)
    seen = set()
    blocks = []
    for v in g.vertices:
        if v in seen:
            continue
        block = {v}
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    block.add(y)
                    queue.append(y)
        blocks.append(frozenset(block))
    return sorted(blocks, key=lambda b: sorted(b))


def geodesic_distance(g: Graph, u, v):
    """Shortest undirected edge count between u and v; inf across components."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    adj = _undirected_adjacency(g)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return INFINITE


def find_cycles(g: Graph):
    """All cycles up to rotation, canonical, sorted by their edge lists.

    A cycle is a closed path whose edges have pairwise distinct sources, so
    it is determined by a simple directed vertex cycle plus one edge choice
    per step.  Each is discovered exactly once, rooted at its least vertex.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    found = []

    def extend(root, current, visited, acc):
        for e in g.out_edges(current):
            w = g.rng[e]
            if w == root:
                found.append(acc + [e])
            elif w not in visited and order[w] > order[root]:
                extend(root, w, visited | {w}, acc + [e])

    for root in g.vertices:
        extend(root, root, {root}, [])
    cycles = [Cycle.from_edges(g, edges) for edges in found]
    return sorted(cycles, key=lambda c: c.edges)


def cycle_has_exit(g: Graph, c: Cycle) -> bool:
    """True when some vertex on the cycle emits an edge other than its cycle edge."""
    for e in c.edges:
        g.check_edge(e)
        if any(f != e for f in g.out_edges(g.src[e])):
            return True
    return False


def condition_L(g: Graph) -> bool:
    return all(cycle_has_exit(g, c) for c in find_cycles(g))


def cycles_without_exits(g: Graph):
    return [c for c in find_cycles(g) if not cycle_has_exit(g, c)]


def exit_free_cycle_vertices(g: Graph) -> frozenset:
    """P_c: the union of the vertex sets of all exit-free cycles."""
    out = set()
    for c in cycles_without_exits(g):
        out |= c.vertex_set(g)
    return frozenset(out)


def reachable_from(g: Graph, v) -> frozenset:
    """Vertices reachable from v along directed paths (v included)."""
    g.check_vertex(v)
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for e in g.out_edges(x):
            w = g.rng[e]
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def is_downward_directed(g: Graph) -> bool:
    """Every pair of vertices flows to a common vertex via directed paths."""
    reach = {v: reachable_from(g, v) for v in g.vertices}
    for u, v in combinations(g.vertices, 2):
        if not (reach[u] & reach[v]):
            return False
    return True


def is_hereditary(g: Graph, s) -> bool:
    return all(g.rng[e] in s for e in g.edges if g.src[e] in s)


def is_saturated(g: Graph, s) -> bool:
    for v in g.vertices:
        if v in s or not g.is_regular(v):
            continue
        if all(g.rng[e] in s for e in g.out_edges(v)):
            return False
    return True


def hereditary_saturated_closure(g: Graph, seed) -> frozenset:
    """Least hereditary and saturated superset of `seed`."""
    seed = set(seed)
    for v in seed:
        g.check_vertex(v)
    h = set(seed)
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            if g.src[e] in h and g.rng[e] not in h:
                h.add(g.rng[e])
                changed = True
        for v in g.vertices:
            if v in h or not g.is_regular(v):
                continue
            if all(g.rng[e] in h for e in g.out_edges(v)):
                h.add(v)
                changed = True
    return frozenset(h)


def enumerate_hereditary_saturated(g: Graph, max_vertices: int = DEFAULT_VERTEX_CAP):
    """All hereditary saturated subsets, by closing every vertex subset.

    Exponential in the vertex count; guarded by a hard cap (default 16)
    because the toolkit targets desk-scale graphs.
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise ResourceCapExceeded(
            f"hereditary-saturated enumeration needs 2^{n} subsets; "
            f"cap is {max_vertices} vertices",
            needed=n,
            cap=max_vertices,
        )
    memo = {}
    out = set()
    for mask in range(1 << n):
        subset = frozenset(v for i, v in enumerate(g.vertices) if mask >> i & 1)
        if subset not in memo:
            memo[subset] = hereditary_saturated_closure(g, subset)
        out.add(memo[subset])
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def quotient_graph(g: Graph, h) -> Graph:
    """E/H: drop the vertices of H and every edge with range inside H."""
    h = frozenset(h)
    for v in h:
        g.check_vertex(v)
    if h == frozenset(g.vertices):
        raise GraphError("quotient by the full vertex set is rejected")
    vs = [v for v in g.vertices if v not in h]
    es = [(e, g.src[e], g.rng[e]) for e in g.edges if g.rng[e] not in h]
    for e, s, _ in es:
        if s in h:
            raise GraphError(f"set is not hereditary: edge {e!r} leaves it")
    return Graph.build(vs, es)


def opposite_graph(g: Graph) -> Graph:
    return Graph.build(g.vertices, [(e, g.rng[e], g.src[e]) for e in g.edges])


def extended_graph(g: Graph) -> ExtendedGraph:
    triples = g.edge_triples()
    ghost_of = {}
    for e, s, r in list(triples):
        ghost = e + "*"
        triples.append((ghost, r, s))
        ghost_of[ghost] = e
    return ExtendedGraph(Graph.build(g.vertices, triples), ghost_of)


def _assert_exit_free(g: Graph, c: Cycle):
    for e in c.edges:
        g.check_edge(e)
    if cycle_has_exit(g, c):
        raise GraphError("cycle has an exit")


def paths_into(g: Graph, targets: frozenset):
    """Paths whose only vertex inside `targets` is their range.

    Trivial paths at target vertices are included.  Returns None when there
    are infinitely many, i.e. when a directed cycle outside `targets` can
    reach them.
    """
    for v in targets:
        g.check_vertex(v)
    results = [Path.vertex(g, v) for v in sorted(targets)]

    def backward(x, tail, on_stack):
        # tail is a path from x into targets touching them only at its end
        for e in g.in_edges(x):
            s = g.src[e]
            if s in targets:
                continue
            if s in on_stack:
                raise _InfinitelyMany()
            p = Path.from_edges(g, (e,) + tail)
            results.append(p)
            backward(s, p.edges, on_stack | {s})

    try:
        for v in sorted(targets):
            backward(v, (), frozenset())
    except _InfinitelyMany:
        return None
    return sorted(results, key=Path.sort_key)


class _InfinitelyMany(Exception):
    pass


def cycle_feeding_paths(g: Graph, c: Cycle):
    """Paths reaching the cycle's vertex set without entering it early."""
    _assert_exit_free(g, c)
    return paths_into(g, c.vertex_set(g))


def count_paths_ending_at_cycle(g: Graph, c: Cycle):
    """Number of paths ending at the exit-free cycle c, counted as: range on
    the cycle and not traversing every edge of the cycle.

    Once a path touches the cycle it is forced along it, so each counted
    path is a feeding path extended by 0..len(c)-1 cycle edges.  Returns
    math.inf exactly when another cycle has a directed route into c.
    """
    feeding = cycle_feeding_paths(g, c)
    if feeding is None:
        return INFINITE
    return c.length * len(feeding)


def count_paths_ending_at_base(g: Graph, c: Cycle):
    """The companion count: paths ending at the cycle's base vertex that do
    not wrap around the whole cycle.  Equals the number of feeding paths."""
    feeding = cycle_feeding_paths(g, c)
    if feeding is None:
        return INFINITE
    return len(feeding)


def all_paths_up_to(g: Graph, max_len: int):
    """Every path of length <= max_len, trivial paths included, sorted."""
    if max_len < 0:
        raise GraphError("path length bound must be >= 0")
    frontier = [Path.vertex(g, v) for v in g.vertices]
    out = list(frontier)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for e in g.out_edges(p.target):
                nxt.append(Path(p.source, g.rng[e], p.edges + (e,)))
        out.extend(nxt)
        frontier = nxt
    return sorted(out, key=Path.sort_key)


# --- fixture-style constructors -------------------------------------------


def rose_graph(m: int) -> Graph:
    """The rose R_m: a single vertex with m loops (R_0 is an isolated vertex)."""
    if m < 0:
        raise GraphError("rose needs m >= 0 petals")
    return Graph.build(["v"], [(f"f{i}", "v", "v") for i in range(1, m + 1)])


def line_graph(n: int) -> Graph:
    """n vertices in a directed line u1 -> u2 -> ... -> un."""
    if n < 1:
        raise GraphError("line needs n >= 1 vertices")
    vs = [f"u{i}" for i in range(1, n + 1)]
    es = [(f"f{i}", f"u{i}", f"u{i+1}") for i in range(1, n)]
    return Graph.build(vs, es)


def cycle_graph(n: int) -> Graph:
    """The n-cycle with edges f_i: u_i -> u_{i+1} and f_n closing back to u_1."""
    if n < 1:
        raise GraphError("cycle needs n >= 1 vertices")
    vs = [f"u{i}" for i in range(1, n + 1)]
    es = [(f"f{i}", f"u{i}", f"u{i+1}") for i in range(1, n)]
    es.append((f"f{n}", f"u{n}", "u1"))
    return Graph.build(vs, es)


def toeplitz_graph() -> Graph:
    """One loop e at u plus an exit edge f: u -> v."""
    return Graph.build(["u", "v"], [("e", "u", "u"), ("f", "u", "v")])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; the id sets of the two graphs must not collide."""
    ids1 = set(g1.vertices) | set(g1.edges)
    ids2 = set(g2.vertices) | set(g2.edges)
    if ids1 & ids2:
        raise GraphError(f"id collision in disjoint union: {sorted(ids1 & ids2)}")
    return Graph.build(
        list(g1.vertices) + list(g2.vertices),
        g1.edge_triples() + g2.edge_triples(),
    )
