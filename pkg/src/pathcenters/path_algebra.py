"""Exact arithmetic in the path algebra KE with its natural grading.

Elements are finite linear combinations of paths with exact scalars; the
product is the bilinear extension of path concatenation (zero on mismatched
range/source).  Everything is a pure value: operations return new elements.
"""

from __future__ import annotations

from .errors import AmbientError, GraphError
from .graph import Graph, Path, all_paths_up_to
from .linalg import sparse_nullspace
from .scalars import QQ


class KEElement:
    """A linear combination of paths of a fixed ambient graph."""

    __slots__ = ("graph", "field", "coeffs")

    def __init__(self, graph: Graph, field, coeffs):
        self.graph = graph
        self.field = field
        self.coeffs = {p: c for p, c in coeffs.items() if c != field.zero}

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, graph, field=QQ):
        return cls(graph, field, {})

    @classmethod
    def from_path(cls, graph, path: Path, coeff=1, field=QQ):
        return cls(graph, field, {path: field.coerce(coeff)})

    @classmethod
    def vertex(cls, graph, v, coeff=1, field=QQ):
        return cls.from_path(graph, Path.vertex(graph, v), coeff, field)

    @classmethod
    def one(cls, graph, field=QQ):
        return cls(
            graph, field,
            {Path.vertex(graph, v): field.one for v in graph.vertices},
        )

    # -- ring structure ------------------------------------------------

    def _check_ambient(self, other):
        if self.graph != other.graph:
            raise AmbientError("elements live over different graphs")
        if self.field != other.field:
            raise AmbientError("elements use different scalar fields")

    def __add__(self, other):
        self._check_ambient(other)
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = self.field.add(out.get(p, self.field.zero), c)
        return KEElement(self.graph, self.field, out)

    def __neg__(self):
        return KEElement(
            self.graph, self.field,
            {p: self.field.neg(c) for p, c in self.coeffs.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = self.field.coerce(k)
        return KEElement(
            self.graph, self.field,
            {p: self.field.mul(k, c) for p, c in self.coeffs.items()},
        )

    def __rmul__(self, k):
        return self.scale(k)

    def __mul__(self, other):
        if not isinstance(other, KEElement):
            return NotImplemented
        self._check_ambient(other)
        out = {}
        for p, a in self.coeffs.items():
            for q, b in other.coeffs.items():
                if p.target != q.source:
                    continue
                r = Path(p.source, q.target, p.edges + q.edges)
                c = self.field.add(out.get(r, self.field.zero), self.field.mul(a, b))
                if c == self.field.zero:
                    out.pop(r, None)
                else:
                    out[r] = c
        return KEElement(self.graph, self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, KEElement)
            and self.graph == other.graph
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        from .textio import element_to_text

        return element_to_text(self)

    # -- structure queries ----------------------------------------------

    def support(self):
        return sorted(self.coeffs, key=Path.sort_key)

    def degree(self):
        """Common path length, or None for a mixed (non-homogeneous) element."""
        lengths = {p.length for p in self.coeffs}
        if len(lengths) == 1:
            return lengths.pop()
        return None

    def peirce_component(self, u, v):
        """The u·a·v piece of the Peirce decomposition."""
        self.graph.check_vertex(u)
        self.graph.check_vertex(v)
        return KEElement(
            self.graph, self.field,
            {p: c for p, c in self.coeffs.items()
             if p.source == u and p.target == v},
        )


def paths_between(g: Graph, u, v, max_len: int):
    return [p for p in all_paths_up_to(g, max_len)
            if p.source == u and p.target == v]


def left_annihilator_test(g: Graph, mu: Path, v, w, max_len: int, field=QQ) -> bool:
    """Decide whether mu·x = 0 forces x = 0 on the span of v-to-w paths of
    bounded length.  Always true in a path algebra: concatenation with a
    fixed path keeps distinct paths distinct."""
    g.check_vertex(v)
    g.check_vertex(w)
    if mu.target != v:
        raise GraphError("range of the path must equal the left vertex")
    basis = paths_between(g, v, w, max_len)
    rows = {}
    for j, x in enumerate(basis):
        prod = mu.concat(x)
        rows.setdefault(prod, {})[j] = field.one
    kernel = sparse_nullspace(rows.values(), len(basis), field)
    return not kernel
