"""Exact arithmetic in Cohn and Leavitt path algebras.

Raw words over the extended graph are rewritten into the canonical basis of
monomials (real path)·(ghost path)*.  Two rules do all the work:

  CK1   e* e'          ->  delta_{e,e'} r(e)                  (both kinds)
  CK2-  e_v e_v*       ->  v - sum of f f* over other f at v  (Leavitt only)

where e_v is the designated special edge at the regular vertex v.  CK2 is
oriented as an elimination of the special pair, never as an expansion of a
vertex, which is what makes the rewriting terminate.  In the Leavitt basis a
monomial is in normal form exactly when its real and ghost parts do not both
end with the same special edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientError, GraphError, WordError
from .graph import Graph, Path, all_paths_up_to
from .linalg import sparse_nullspace
from .scalars import QQ

COHN = "cohn"
LEAVITT = "leavitt"

_MAX_REWRITE_STEPS = 200_000


@dataclass(frozen=True)
class GMonomial:
    """A basis monomial: real part times the star of the ghost part."""

    real: Path
    ghost: Path

    def __post_init__(self):
        if self.real.target != self.ghost.target:
            raise GraphError("real and ghost parts must share their range")

    @classmethod
    def at_vertex(cls, g: Graph, v) -> "GMonomial":
        p = Path.vertex(g, v)
        return cls(p, p)

    @property
    def source(self):
        return self.real.source

    @property
    def target(self):
        # the vertex the monomial maps out of on the right
        return self.ghost.source

    @property
    def degree(self):
        return self.real.length - self.ghost.length

    @property
    def real_degree(self):
        return self.real.length

    @property
    def is_vertex(self):
        return self.real.is_trivial and self.ghost.is_trivial

    def star(self) -> "GMonomial":
        return GMonomial(self.ghost, self.real)

    def sort_key(self):
        return (self.real.sort_key(), self.ghost.sort_key())

    def __repr__(self):
        if self.ghost.is_trivial:
            return repr(self.real)
        return f"{self.real!r}|{self.ghost!r}"


@dataclass(frozen=True)
class SpecialEdgeChoice:
    """One chosen edge per regular vertex; fixes the Leavitt basis."""

    pairs: tuple

    @classmethod
    def lex_default(cls, g: Graph) -> "SpecialEdgeChoice":
        return cls(tuple(
            (v, min(g.out_edges(v))) for v in g.vertices if g.is_regular(v)
        ))

    @classmethod
    def from_mapping(cls, g: Graph, mapping) -> "SpecialEdgeChoice":
        pairs = []
        for v in g.vertices:
            if not g.is_regular(v):
                continue
            if v not in mapping:
                raise GraphError(f"no special edge chosen at regular vertex {v!r}")
            e = mapping[v]
            if e not in g.out_edges(v):
                raise GraphError(f"edge {e!r} is not emitted by {v!r}")
            pairs.append((v, e))
        return cls(tuple(pairs))

    def edge_at(self, v):
        for u, e in self.pairs:
            if u == v:
                return e
        return None


def default_special(g: Graph, kind, special=None):
    if kind == COHN:
        return None
    if kind != LEAVITT:
        raise AmbientError(f"unknown algebra kind {kind!r}")
    return special if special is not None else SpecialEdgeChoice.lex_default(g)


def is_normal_monomial(g: Graph, kind, special, m: GMonomial) -> bool:
    if kind == COHN:
        return True
    if m.real.is_trivial or m.ghost.is_trivial:
        return True
    e = m.real.edges[-1]
    if e != m.ghost.edges[-1]:
        return True
    return special.edge_at(g.src[e]) != e


def _chop(g: Graph, p: Path) -> Path:
    last = p.edges[-1]
    return Path(p.source, g.src[last], p.edges[:-1])


def _straighten(g, kind, special, field, real, ghost, coeff, out):
    """Accumulate coeff * real·ghost* into `out` in normal form.

    Only the junction can be off-basis, and the CK2 elimination shortens it,
    so the recursion terminates after at most min(len, len) steps.
    """
    if kind == LEAVITT and real.edges and ghost.edges:
        e = real.edges[-1]
        if e == ghost.edges[-1]:
            v = g.src[e]
            if special.edge_at(v) == e:
                lam, mu = _chop(g, real), _chop(g, ghost)
                _straighten(g, kind, special, field, lam, mu, coeff, out)
                for f in g.out_edges(v):
                    if f == e:
                        continue
                    m = GMonomial(
                        Path(lam.source, g.rng[f], lam.edges + (f,)),
                        Path(mu.source, g.rng[f], mu.edges + (f,)),
                    )
                    _accumulate(out, m, field.neg(coeff), field)
                return
    _accumulate(out, GMonomial(real, ghost), coeff, field)


def _accumulate(out, m, coeff, field):
    c = field.add(out.get(m, field.zero), coeff)
    if c == field.zero:
        out.pop(m, None)
    else:
        out[m] = c


def mul_monomials(g, kind, special, field, m1: GMonomial, m2: GMonomial):
    """Product of two normal monomials as a dict of normal monomials."""
    out = {}
    mu1, lam2 = m1.ghost, m2.real
    if lam2.starts_with(mu1):
        mid = lam2.strip_prefix(mu1)
        _straighten(g, kind, special, field,
                    m1.real.concat(mid), m2.ghost, field.one, out)
    elif mu1.starts_with(lam2):
        rest = mu1.strip_prefix(lam2)
        _straighten(g, kind, special, field,
                    m1.real, m2.ghost.concat(rest), field.one, out)
    return out


# --- the raw-word rewrite engine -------------------------------------------

_V, _E, _G = "v", "e", "g"


def _classify_symbol(g: Graph, sym: str):
    if sym.endswith("*"):
        base = sym[:-1]
        g.check_edge(base)
        return (_G, base)
    if sym in g.src:
        return (_E, sym)
    if sym in g._out:
        return (_V, sym)
    raise WordError(f"unknown symbol {sym!r}")


def _sym_endpoints(g: Graph, sym):
    tag, x = sym
    if tag == _V:
        return x, x
    if tag == _E:
        return g.src[x], g.rng[x]
    return g.rng[x], g.src[x]


def parse_word(g: Graph, word):
    """Symbols -> internal word, checking composability in the extended graph."""
    syms = [_classify_symbol(g, s) for s in word]
    if not syms:
        raise WordError("empty word")
    for a, b in zip(syms, syms[1:]):
        if _sym_endpoints(g, a)[1] != _sym_endpoints(g, b)[0]:
            raise WordError(
                f"symbols {a[1]!r} and {b[1]!r} do not compose in the extended graph"
            )
    return tuple(syms)


def _find_redexes(g, kind, special, word):
    redexes = []
    n = len(word)
    for i, sym in enumerate(word):
        if sym[0] == _V and n > 1:
            redexes.append(("absorb", i))
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a[0] == _G and b[0] == _E:
            redexes.append(("ck1", i))
        elif (
            kind == LEAVITT
            and a[0] == _E
            and b[0] == _G
            and a[1] == b[1]
            and special.edge_at(g.src[a[1]]) == a[1]
        ):
            redexes.append(("ck2", i))
    return redexes


def _apply_redex(g, field, word, redex, coeff):
    """Returns the list of (coeff, word) replacing the given redex."""
    rule, i = redex
    if rule == "absorb":
        return [(coeff, word[:i] + word[i + 1:])]
    if rule == "ck1":
        e, f = word[i][1], word[i + 1][1]
        if e != f:
            return []
        repl = ((_V, g.rng[e]),)
        return [(coeff, word[:i] + repl + word[i + 2:])]
    # ck2: e e* -> v - sum of f f* over the other edges at v
    e = word[i][1]
    v = g.src[e]
    out = [(coeff, word[:i] + ((_V, v),) + word[i + 2:])]
    for f in g.out_edges(v):
        if f == e:
            continue
        out.append((field.neg(coeff),
                    word[:i] + ((_E, f), (_G, f)) + word[i + 2:]))
    return out


def _finish_word(g, word) -> GMonomial:
    reals, ghosts = [], []
    for tag, x in word:
        if tag == _E:
            if ghosts:
                raise RuntimeError("unreduced word: real edge after ghost")
            reals.append(x)
        elif tag == _G:
            ghosts.append(x)
        else:
            if len(word) != 1:
                raise RuntimeError("unreduced word: vertex not absorbed")
            p = Path.vertex(g, x)
            return GMonomial(p, p)
    real = Path.from_edges(g, reals) if reals else None
    ghost = Path.from_edges(g, tuple(reversed(ghosts))) if ghosts else None
    if real is None:
        real = Path.vertex(g, ghost.target)
    if ghost is None:
        ghost = Path.vertex(g, real.target)
    return GMonomial(real, ghost)


def reduce_word(g, kind, special, field, word, coeff=None, rng=None):
    """Rewrite one parsed word to a dict of normal monomials.

    The deterministic strategy runs absorb/CK1 to a fixpoint before each CK2
    step; with `rng` given, an applicable redex is picked at random instead,
    which is how the confluence tests drive the engine.
    """
    coeff = field.one if coeff is None else coeff
    out = {}
    work = [(coeff, word)]
    steps = 0
    while work:
        c, w = work.pop()
        redexes = _find_redexes(g, kind, special, w)
        if not redexes:
            _accumulate(out, _finish_word(g, w), c, field)
            continue
        if rng is None:
            ck12 = [r for r in redexes if r[0] != "ck2"]
            redex = min(ck12 or redexes, key=lambda r: r[1])
        else:
            redex = redexes[rng.randrange(len(redexes))]
        work.extend(_apply_redex(g, field, w, redex, c))
        steps += 1
        if steps > _MAX_REWRITE_STEPS:
            raise RuntimeError("rewriting exceeded the step budget")
    return out


class GAElement:
    """An element of a Cohn or Leavitt path algebra in the normal-form basis.

    Every element records the algebra kind, the ambient graph and (for
    Leavitt) the special-edge choice its basis was built with, so arithmetic
    across mismatched presentations is impossible.
    """

    __slots__ = ("kind", "graph", "special", "field", "coeffs")

    def __init__(self, kind, graph, special, field, coeffs):
        self.kind = kind
        self.graph = graph
        self.special = special
        self.field = field
        self.coeffs = {m: c for m, c in coeffs.items() if c != field.zero}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, graph, kind, special=None, field=QQ):
        return cls(kind, graph, default_special(graph, kind, special), field, {})

    @classmethod
    def from_monomial(cls, graph, kind, m: GMonomial, coeff=1, special=None, field=QQ):
        special = default_special(graph, kind, special)
        if not is_normal_monomial(graph, kind, special, m):
            raise GraphError(f"monomial {m!r} is not in normal form")
        return cls(kind, graph, special, field, {m: field.coerce(coeff)})

    @classmethod
    def vertex(cls, graph, kind, v, special=None, field=QQ):
        return cls.from_monomial(graph, kind, GMonomial.at_vertex(graph, v),
                                 special=special, field=field)

    @classmethod
    def edge(cls, graph, kind, e, special=None, field=QQ):
        graph.check_edge(e)
        p = Path.from_edges(graph, (e,))
        m = GMonomial(p, Path.vertex(graph, graph.rng[e]))
        return cls.from_monomial(graph, kind, m, special=special, field=field)

    @classmethod
    def ghost_edge(cls, graph, kind, e, special=None, field=QQ):
        graph.check_edge(e)
        p = Path.from_edges(graph, (e,))
        m = GMonomial(Path.vertex(graph, graph.rng[e]), p)
        return cls.from_monomial(graph, kind, m, special=special, field=field)

    @classmethod
    def one(cls, graph, kind, special=None, field=QQ):
        special = default_special(graph, kind, special)
        return cls(kind, graph, special, field, {
            GMonomial.at_vertex(graph, v): field.one for v in graph.vertices
        })

    # -- ring structure ---------------------------------------------------

    def _check_ambient(self, other):
        if self.kind != other.kind:
            raise AmbientError("elements of different algebra kinds")
        if self.graph != other.graph:
            raise AmbientError("elements live over different graphs")
        if self.special != other.special:
            raise AmbientError("elements use different special-edge choices")
        if self.field != other.field:
            raise AmbientError("elements use different scalar fields")

    def _make(self, coeffs):
        return GAElement(self.kind, self.graph, self.special, self.field, coeffs)

    def __add__(self, other):
        self._check_ambient(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = self.field.add(out.get(m, self.field.zero), c)
        return self._make(out)

    def __neg__(self):
        return self._make({m: self.field.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = self.field.coerce(k)
        return self._make({m: self.field.mul(k, c) for m, c in self.coeffs.items()})

    def __rmul__(self, k):
        return self.scale(k)

    def __mul__(self, other):
        if not isinstance(other, GAElement):
            return NotImplemented
        self._check_ambient(other)
        out = {}
        for m1, a in self.coeffs.items():
            for m2, b in other.coeffs.items():
                prod = mul_monomials(self.graph, self.kind, self.special,
                                     self.field, m1, m2)
                ab = self.field.mul(a, b)
                for m, c in prod.items():
                    _accumulate(out, m, self.field.mul(ab, c), self.field)
        return self._make(out)

    def __eq__(self, other):
        return (
            isinstance(other, GAElement)
            and self.kind == other.kind
            and self.graph == other.graph
            and self.special == other.special
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        from .textio import element_to_text

        return element_to_text(self)

    # -- involution, grading, shape ----------------------------------------

    def involution(self):
        """(real·ghost*)* = ghost·real*, extended linearly over the scalars."""
        out = {}
        for m, c in self.coeffs.items():
            _accumulate(out, m.star(), c, self.field)
        return self._make(out)

    def support(self):
        return sorted(self.coeffs, key=GMonomial.sort_key)

    def degree(self):
        """Common degree of the support, or None when the element is mixed."""
        degs = {m.degree for m in self.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return None

    def real_degree(self):
        """Max real-part length over the support (0 for the zero element)."""
        return max((m.real_degree for m in self.coeffs), default=0)

    def is_symmetric(self):
        return all(m.real == m.ghost for m in self.coeffs)

    def peirce_component(self, u, v):
        self.graph.check_vertex(u)
        self.graph.check_vertex(v)
        return self._make({m: c for m, c in self.coeffs.items()
                           if m.source == u and m.target == v})


def normal_form(graph, kind, terms, *, special=None, field=QQ, rng=None) -> GAElement:
    """Reduce scalar-weighted raw words over the extended graph to basis form."""
    special = default_special(graph, kind, special)
    out = {}
    for coeff, word in terms:
        parsed = parse_word(graph, word)
        reduced = reduce_word(graph, kind, special, field, parsed,
                              field.coerce(coeff), rng=rng)
        for m, c in reduced.items():
            _accumulate(out, m, c, field)
    return GAElement(kind, graph, special, field, out)


def word_element(graph, kind, word, coeff=1, *, special=None, field=QQ) -> GAElement:
    return normal_form(graph, kind, [(coeff, word)], special=special, field=field)


def path_element(graph, kind, path: Path, *, special=None, field=QQ) -> GAElement:
    m = GMonomial(path, Path.vertex(graph, path.target))
    return GAElement.from_monomial(graph, kind, m, special=special, field=field)


def T_operator(a: GAElement, x: GAElement) -> GAElement:
    """T_a(x) = a* x a; satisfies T_a T_b = T_{ba}."""
    a._check_ambient(x)
    return a.involution() * x * a


def enumerate_ga_monomials(graph, kind, max_len, *, degrees=None,
                           special=None, source=None):
    """Normal-form monomials with both parts of length <= max_len, sorted.

    `degrees` restricts the degree to an inclusive window (a, b); `source`
    pins both the real and the ghost part to start at one vertex.
    """
    special = default_special(graph, kind, special)
    by_target = {}
    for p in all_paths_up_to(graph, max_len):
        by_target.setdefault(p.target, []).append(p)
    out = []
    for target in sorted(by_target):
        group = by_target[target]
        for real in group:
            if source is not None and real.source != source:
                continue
            for ghost in group:
                if source is not None and ghost.source != source:
                    continue
                if degrees is not None:
                    d = real.length - ghost.length
                    if not degrees[0] <= d <= degrees[1]:
                        continue
                m = GMonomial(real, ghost)
                if is_normal_monomial(graph, kind, special, m):
                    out.append(m)
    return sorted(out, key=GMonomial.sort_key)


def fixed_point_subspace(graph, kind, c: Path, max_len, *, special=None, field=QQ):
    """Exact basis of the degree-zero fixed points of T_c in a bounded span.

    c must be a closed path based at some vertex u; candidates are the
    degree-zero normal monomials starting and ending at u with real length
    at most `max_len`.  The fixed-point equations are assembled in the full
    algebra, so no spurious solutions arise from clipped products.
    """
    if c.source != c.target:
        raise GraphError("T_c needs a closed path")
    special = default_special(graph, kind, special)
    u = c.source
    candidates = enumerate_ga_monomials(graph, kind, max_len, degrees=(0, 0),
                                        special=special, source=u)
    c_el = path_element(graph, kind, c, special=special, field=field)
    rows = {}
    for j, m in enumerate(candidates):
        m_el = GAElement.from_monomial(graph, kind, m, special=special, field=field)
        image = T_operator(c_el, m_el) - m_el
        for rm, coeff in image.coeffs.items():
            rows.setdefault(rm, {})[j] = coeff
    basis = sparse_nullspace(rows.values(), len(candidates), field)
    out = []
    for vec in basis:
        coeffs = {candidates[j]: c for j, c in vec.items()}
        out.append(GAElement(kind, graph, special, field, coeffs))
    return out


def cohn_to_leavitt_graph(g: Graph) -> Graph:
    """The graph F with C_K(E) isomorphic to L_K(F): every non-sink vertex v
    gains a fresh sink v' receiving one new parallel edge per edge at v."""
    vs = list(g.vertices)
    es = g.edge_triples()
    taken = set(vs) | {e for e, _, _ in es}

    def fresh(base):
        name = base + "_prime"
        while name in taken:
            name += "_"
        taken.add(name)
        return name

    for v in g.vertices:
        if g.is_sink(v):
            continue
        nv = fresh(v)
        vs.append(nv)
        for e in g.out_edges(v):
            es.append((fresh(e), v, nv))
    return Graph.build(vs, es)
