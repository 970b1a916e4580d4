"""The structure theorems as executable classifiers.

Covers: the center of the path algebra KE (scalars except on cycle graphs,
where it is a polynomial ring on the rotation sum), primeness and centers of
prime Cohn and Leavitt path algebras, the enumeration of graded prime ideals
with their I/J flavors, and the upper/lower center bounds for a general
Leavitt path algebra.  Every structural answer can be cross-checked against
the brute-force oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GraphError, HypothesisNotMet
from .graph import (
    Cycle,
    Graph,
    Path,
    all_paths_up_to,
    connected_components,
    count_paths_ending_at_base,
    count_paths_ending_at_cycle,
    cycle_feeding_paths,
    cycles_without_exits,
    enumerate_hereditary_saturated,
    hereditary_saturated_closure,
    is_downward_directed,
    paths_into,
    quotient_graph,
)
from .graph_algebra import (
    COHN,
    LEAVITT,
    GAElement,
    default_special,
    normal_form,
)
from .linalg import LinearSpan
from .oracle import (
    OracleWindow,
    central_subspace,
    check_central,
    element_vector,
    graded_center_component,
    structural_truncation,
)
from .path_algebra import KEElement
from .scalars import QQ

ZERO = "zero"
SCALAR = "scalar"
POLY = "poly"
LAURENT = "laurent"
SUM = "sum"

_KIND_NAMES = {
    ZERO: "0",
    SCALAR: "K",
    POLY: "K[x]",
    LAURENT: "K[x,x^-1]",
}


@dataclass(frozen=True)
class CenterStructure:
    """Structural description of a center: 0, K, K[x] or K[x,x^-1], with
    explicit generators when constructible, or a direct sum of such pieces.

    For scalar pieces `generators` holds the identity; for polynomial and
    Laurent pieces it holds the identity followed by the ring generator.
    """

    kind: str
    generators: tuple = ()
    components: tuple = ()

    def describe(self) -> str:
        if self.kind == SUM:
            return " (+) ".join(c.describe() for c in self.components)
        return _KIND_NAMES[self.kind]


# --- the path algebra KE -----------------------------------------------------


def _component_cycle(g: Graph, comp):
    """The unique cycle when the component is a cycle graph, else None."""
    for v in comp:
        if len(g.out_edges(v)) != 1 or len(g.in_edges(v)) != 1:
            return None
    start = min(comp)
    edges = []
    v = start
    for _ in range(len(comp)):
        e = g.out_edges(v)[0]
        edges.append(e)
        v = g.rng[e]
    if v != start:
        return None
    return Cycle.from_edges(g, edges)


def cycle_rotation_sum(g: Graph, cyc: Cycle, power: int = 1, field=QQ) -> KEElement:
    """Sum over the cycle's vertices of the k-th power of the rotation based
    there; power 1 gives the generator of Z(KE) for a cycle graph."""
    coeffs = {}
    for v in sorted(cyc.vertex_set(g)):
        rot = cyc.rotation_based_at(g, v)
        p = Path.vertex(g, v)
        for _ in range(power):
            p = p.concat(rot)
        coeffs[p] = field.add(coeffs.get(p, field.zero), field.one)
    return KEElement(g, field, coeffs)


def center_structure_KE(g: Graph, field=QQ) -> CenterStructure:
    """Z(KE): the direct sum over connected components of K on the component
    identity, except that a cycle component contributes K[x] generated by
    the sum of its based rotations."""
    pieces = []
    for comp in connected_components(g):
        one_comp = KEElement(
            g, field, {Path.vertex(g, v): field.one for v in sorted(comp)}
        )
        cyc = _component_cycle(g, comp)
        if cyc is None:
            pieces.append(CenterStructure(SCALAR, (one_comp,)))
        else:
            gen = cycle_rotation_sum(g, cyc, 1, field)
            pieces.append(CenterStructure(POLY, (one_comp, gen)))
    if len(pieces) == 1:
        return pieces[0]
    return CenterStructure(SUM, (), tuple(pieces))


def cycle_center_evaluate(g: Graph, poly_coeffs, field=QQ) -> KEElement:
    """Evaluate sum_i p(c_i) on a cycle graph; p is a dense coefficient list,
    low degree first.  The map p -> sum_i p(c_i) is onto the center."""
    comps = connected_components(g)
    if len(comps) != 1:
        raise GraphError("not a cycle graph: disconnected")
    cyc = _component_cycle(g, comps[0])
    if cyc is None:
        raise GraphError("not a cycle graph")
    out = KEElement.zero(g, field)
    for k, a in enumerate(poly_coeffs):
        a = field.coerce(a)
        if a == field.zero:
            continue
        if k == 0:
            out = out + KEElement.one(g, field).scale(a)
        else:
            out = out + cycle_rotation_sum(g, cyc, k, field).scale(a)
    return out


# --- prime Cohn and prime Leavitt algebras ----------------------------------


def is_prime_leavitt(g: Graph) -> bool:
    """L_K(E) is prime exactly when the graph is downward directed."""
    return is_downward_directed(g)


def is_prime_cohn(g: Graph) -> bool:
    """C_K(E) is prime exactly when the graph has a single vertex."""
    return len(g.vertices) == 1


def center_prime_cohn(g: Graph, field=QQ) -> CenterStructure:
    """Z(C_K(E)) = K for a prime Cohn path algebra (the one-vertex rose)."""
    if not is_prime_cohn(g):
        raise HypothesisNotMet("Cohn path algebra is not prime: |E^0| != 1")
    return CenterStructure(SCALAR, (GAElement.one(g, COHN, field=field),))


@dataclass(frozen=True)
class PrimeLeavittClassification:
    scalar: bool
    reason: str  # "condition_L" | "infinite_feeding" | "finite_cycle"
    cycle: Cycle | None = None
    path_count: object = None  # int, or math.inf
    base_count: object = None


def classify_prime_leavitt(g: Graph) -> PrimeLeavittClassification:
    if not is_prime_leavitt(g):
        raise HypothesisNotMet("Leavitt path algebra is not prime: "
                               "graph is not downward directed")
    exit_free = cycles_without_exits(g)
    if not exit_free:
        return PrimeLeavittClassification(scalar=True, reason="condition_L")
    if len(exit_free) > 1:
        raise RuntimeError("prime graph with two exit-free cycles; "
                           "orthogonality theorem violated")
    c = exit_free[0]
    n = count_paths_ending_at_cycle(g, c)
    base = count_paths_ending_at_base(g, c)
    if n is math.inf or n == math.inf:
        return PrimeLeavittClassification(
            scalar=True, reason="infinite_feeding", cycle=c,
            path_count=math.inf, base_count=math.inf,
        )
    return PrimeLeavittClassification(
        scalar=False, reason="finite_cycle", cycle=c,
        path_count=n, base_count=base,
    )


def _normalize_leading(el):
    lead = min(el.coeffs, key=lambda m: m.sort_key())
    k = el.coeffs[lead]
    if k == el.field.one:
        return el
    return el.scale(el.field.inv(k))


def laurent_generator(g: Graph, c: Cycle, *, field=QQ, special=None) -> GAElement:
    """The homogeneous degree-l(c) central generator for the Laurent case,
    obtained by exact linear solve in the window of real length at most
    l(c) + the longest feeding path, then verified central and unitary."""
    feeding = cycle_feeding_paths(g, c)
    if feeding is None:
        raise HypothesisNotMet("infinitely many paths feed the cycle")
    max_len = c.length + max(p.length for p in feeding)
    comp = graded_center_component(g, LEAVITT, c.length, max_len,
                                   field=field, special=special)
    if comp.dim != 1:
        raise RuntimeError(
            f"degree-{c.length} central component has dimension {comp.dim}, "
            "expected 1"
        )
    z = _normalize_leading(comp.basis[0])
    one = GAElement.one(g, LEAVITT, special=special, field=field)
    if not check_central(z):
        raise RuntimeError("constructed generator is not central")
    if z * z.involution() != one or z.involution() * z != one:
        raise RuntimeError("constructed generator is not unitary")
    return z


def center_prime_leavitt(g: Graph, field=QQ, special=None) -> CenterStructure:
    """Z(L_K(E)) for prime L_K(E): K under Condition (L) or an infinitely-fed
    exit-free cycle; K[x,x^-1] for a finitely-fed exit-free cycle, with the
    degree-l(c) generator constructed explicitly."""
    cls = classify_prime_leavitt(g)
    special = default_special(g, LEAVITT, special)
    one = GAElement.one(g, LEAVITT, special=special, field=field)
    if cls.scalar:
        return CenterStructure(SCALAR, (one,))
    z = laurent_generator(g, cls.cycle, field=field, special=special)
    return CenterStructure(LAURENT, (one, z))


# --- orthogonality of exit-free cycles ---------------------------------------


@dataclass(frozen=True)
class ExitFreeUniquenessReport:
    exit_free_cycles: tuple
    prime: bool
    unique_for_prime: object  # bool, or None when not applicable
    pairs_checked: int
    cross_products_zero: object  # bool, or None when < 2 cycles


def _ideal_monomials(g: Graph, vertex_set, max_len, special, field):
    paths = [p for p in all_paths_up_to(g, max_len) if p.target in vertex_set]
    by_target = {}
    for p in paths:
        by_target.setdefault(p.target, []).append(p)
    out = []
    for target in sorted(by_target):
        group = by_target[target]
        for a in group:
            for b in group:
                el = normal_form(
                    g, LEAVITT,
                    [(field.one,
                      list(a.edges or [a.source])
                      + [e + "*" for e in reversed(b.edges)])],
                    special=special, field=field,
                )
                if el:
                    out.append(el)
    return out


def uniqueness_check_exit_free(g: Graph, max_len: int = 3, *, field=QQ,
                               special=None) -> ExitFreeUniquenessReport:
    """For prime graphs, confirm there is at most one exit-free cycle; for
    graphs with several, verify computationally that the bounded spanning
    monomials of their ideals annihilate each other."""
    special = default_special(g, LEAVITT, special)
    exit_free = tuple(cycles_without_exits(g))
    prime = is_prime_leavitt(g)
    unique = (len(exit_free) <= 1) if prime else None
    pairs = 0
    cross_zero = None
    if len(exit_free) >= 2:
        cross_zero = True
        spans = [
            _ideal_monomials(g, c.vertex_set(g), max_len, special, field)
            for c in exit_free
        ]
        for i, left in enumerate(spans):
            for j, right in enumerate(spans):
                if i == j:
                    continue
                for a in left:
                    for b in right:
                        pairs += 1
                        if a * b:
                            cross_zero = False
    return ExitFreeUniquenessReport(exit_free, prime, unique, pairs, cross_zero)


# --- graded prime ideals and the center bounds -------------------------------


@dataclass(frozen=True)
class GradedPrimeRecord:
    """A graded prime ideal I(H) together with its classification data."""

    H: frozenset
    quotient: Graph
    flavor: str  # "I" | "J"
    witness: str  # "condition_L" | "infinite_feeding" | "finite_cycle"
    cycle: Cycle | None = None  # exit-free cycle of the quotient, if any
    path_count: object = None


def graded_prime_ideals(g: Graph, max_vertices: int = 16):
    """All proper hereditary saturated H with downward-directed quotient,
    classified into flavor I (a K factor) or J (a K[x,x^-1] factor)."""
    records = []
    everything = frozenset(g.vertices)
    for h in enumerate_hereditary_saturated(g, max_vertices):
        if h == everything:
            continue
        q = quotient_graph(g, h)
        if not is_downward_directed(q):
            continue
        exit_free = cycles_without_exits(q)
        if not exit_free:
            records.append(GradedPrimeRecord(h, q, "I", "condition_L"))
            continue
        if len(exit_free) > 1:
            raise RuntimeError("downward-directed quotient with two exit-free "
                               "cycles; orthogonality theorem violated")
        c = exit_free[0]
        n = count_paths_ending_at_cycle(q, c)
        if n == math.inf:
            records.append(
                GradedPrimeRecord(h, q, "I", "infinite_feeding", c, math.inf))
        else:
            records.append(
                GradedPrimeRecord(h, q, "J", "finite_cycle", c, n))
    return records


@dataclass(frozen=True)
class PieceContribution:
    kind: str  # "zero" | "scalar" | "laurent" | "unknown"
    detail: str
    generator: GAElement | None = None


@dataclass(frozen=True)
class LowerSummand:
    """Z(W_P) for W_P the intersection of the other graded primes."""

    record_index: int
    ideal_vertices: frozenset
    improper: bool
    pieces: tuple

    def describe(self) -> str:
        kinds = [p.kind for p in self.pieces]
        if not kinds or all(k == "zero" for k in kinds):
            return "0"
        parts = []
        for p in self.pieces:
            if p.kind == "zero":
                continue
            parts.append(_KIND_NAMES.get(p.kind, "oracle-bounded"))
        return " (+) ".join(parts)


@dataclass(frozen=True)
class CenterBounds:
    records: tuple
    upper: tuple  # "K" / "K[x,x^-1]" aligned with records
    lower: tuple  # LowerSummand per record
    radical_vertices: frozenset  # intersection of all H_P; empty means B_gr = 0

    def describe_upper(self) -> str:
        return " x ".join(self.upper) if self.upper else "(no graded primes)"

    def describe_lower(self) -> str:
        parts = [s.describe() for s in self.lower if s.describe() != "0"]
        return " (+) ".join(parts) if parts else "0"


def _corner_laurent_generator(g, c: Cycle, feeding, special, field):
    """sum over feeding paths t of  t . (c rotated to enter at r(t)) . t*."""
    terms = []
    for t in feeding:
        rot = c.rotation_based_at(g, t.target)
        word = list(t.edges) + list(rot.edges) + [e + "*" for e in reversed(t.edges)]
        terms.append((field.one, word))
    return normal_form(g, LEAVITT, terms, special=special, field=field)


def _corner_unit(g, feeding, special, field):
    terms = []
    for t in feeding:
        word = (list(t.edges) + [e + "*" for e in reversed(t.edges)]) or [t.source]
        terms.append((field.one, word))
    return normal_form(g, LEAVITT, terms, special=special, field=field)


def _component_center_pieces(g, comp, special, field):
    """Decidable description of the center of the ideal on a full component."""
    sub = Graph.build(sorted(comp),
                      [(e, g.src[e], g.rng[e]) for e in g.edges
                       if g.src[e] in comp])
    if not is_downward_directed(sub):
        return [PieceContribution("unknown",
                                  "non-prime component; oracle-bounded evidence only")]
    cls = classify_prime_leavitt(sub)
    if cls.scalar:
        gen = normal_form(g, LEAVITT, [(field.one, [v]) for v in sorted(comp)],
                          special=special, field=field)
        return [PieceContribution("scalar", f"component identity ({cls.reason})", gen)]
    feeding = cycle_feeding_paths(sub, cls.cycle)
    z = _corner_laurent_generator(g, cls.cycle, feeding, special, field)
    if not check_central(z):
        raise RuntimeError("corner Laurent generator failed the centrality check")
    return [PieceContribution(
        "laurent", f"prime component, exit-free cycle fed by {len(feeding)} paths", z)]


def _ideal_center_pieces(g, h, special, field):
    """Structural center of I(H) in the decidable patterns, else `unknown`.

    Decidable: the zero ideal; whole components carrying a prime Leavitt
    algebra; the closure of a single exit-free cycle (a matrix algebra over
    Laurent polynomials: K[x,x^-1] when finitely many paths end at the
    cycle, zero center when the matrix size is infinite); the closure of a
    single sink (a matrix algebra over K).
    """
    if not h:
        return [PieceContribution("zero", "zero ideal")]
    pieces = []
    for comp in connected_components(g):
        part = h & comp
        if not part:
            continue
        if part == comp:
            pieces.extend(_component_center_pieces(g, comp, special, field))
            continue
        cycles = [c for c in cycles_without_exits(g)
                  if c.vertex_set(g) <= part]
        sinks = [v for v in sorted(part) if g.is_sink(v)]
        if (len(cycles) == 1 and not sinks
                and hereditary_saturated_closure(g, cycles[0].vertex_set(g)) == part):
            c = cycles[0]
            feeding = cycle_feeding_paths(g, c)
            if feeding is None:
                pieces.append(PieceContribution(
                    "zero", "matrix size infinite: a cycle feeds the corner"))
            else:
                z = _corner_laurent_generator(g, c, feeding, special, field)
                if not check_central(z):
                    raise RuntimeError(
                        "corner Laurent generator failed the centrality check")
                pieces.append(PieceContribution(
                    "laurent", f"matrix corner over {len(feeding)} paths", z))
        elif (len(sinks) == 1 and not cycles
                and hereditary_saturated_closure(g, {sinks[0]}) == part):
            feeding = paths_into(g, frozenset(sinks))
            if feeding is None:
                pieces.append(PieceContribution(
                    "zero", "matrix size infinite: a cycle feeds the sink"))
            else:
                unit = _corner_unit(g, feeding, special, field)
                if not check_central(unit):
                    raise RuntimeError("corner unit failed the centrality check")
                pieces.append(PieceContribution(
                    "scalar", f"matrix corner over K on {len(feeding)} paths", unit))
        else:
            pieces.append(PieceContribution(
                "unknown", "no decidable pattern; oracle-bounded evidence only"))
    return pieces


def _whole_center_pieces(g, special, field):
    if is_downward_directed(g):
        cls = classify_prime_leavitt(g)
        one = GAElement.one(g, LEAVITT, special=special, field=field)
        if cls.scalar:
            return [PieceContribution("scalar", f"whole center ({cls.reason})", one)]
        z = laurent_generator(g, cls.cycle, field=field, special=special)
        return [PieceContribution("laurent", "whole center", z)]
    return [PieceContribution("unknown",
                              "whole non-prime algebra; oracle-bounded evidence only")]


def center_bounds(g: Graph, *, field=QQ, special=None,
                  max_vertices: int = 16) -> CenterBounds:
    """Theorem-level bounds: the upper bound is one K per I-record and one
    K[x,x^-1] per J-record; the lower bound collects Z(W_P) for W_P the
    intersection of the other graded primes, described structurally in the
    decidable patterns.  A singleton family makes W_P improper, so its lower
    entry degenerates to the whole center and is flagged as such."""
    special = default_special(g, LEAVITT, special)
    records = tuple(graded_prime_ideals(g, max_vertices))
    upper = tuple("K" if r.flavor == "I" else "K[x,x^-1]" for r in records)
    lower = []
    everything = frozenset(g.vertices)
    for i in range(len(records)):
        others = [r.H for j, r in enumerate(records) if j != i]
        if not others:
            lower.append(LowerSummand(
                i, everything, True,
                tuple(_whole_center_pieces(g, special, field))))
            continue
        hw = frozenset.intersection(*others)
        lower.append(LowerSummand(
            i, hw, False, tuple(_ideal_center_pieces(g, hw, special, field))))
    radical = (frozenset.intersection(*(r.H for r in records))
               if records else everything)
    return CenterBounds(records, upper, tuple(lower), radical)


@dataclass(frozen=True)
class BoundsVerification:
    ok: bool
    oracle_dim: int
    upper_ok: bool
    lower_ok: bool
    radical_empty: bool
    notes: tuple = ()


def project_to_quotient(el: GAElement, h, qgraph: Graph, *, special=None):
    """Image of an element under L_K(E) -> L_K(E/H): monomials landing in H
    die, the rest are renormalized in the quotient's basis."""
    field = el.field
    qspecial = default_special(qgraph, el.kind, special)
    terms = []
    for m, c in el.coeffs.items():
        if m.real.target in h:
            continue
        word = list(m.real.edges) + [e + "*" for e in reversed(m.ghost.edges)]
        terms.append((c, word or [m.real.source]))
    if not terms:
        return GAElement.zero(qgraph, el.kind, qspecial, field)
    return normal_form(qgraph, el.kind, terms, special=qspecial, field=field)


def verify_bounds(g: Graph, bounds: CenterBounds = None,
                  window: OracleWindow = None, *, field=QQ,
                  special=None) -> BoundsVerification:
    """Window-exact consistency of the bounds against the oracle: the bounded
    center basis must project into each quotient's structural truncation
    (upper containment) and must span every decidable lower generator's
    truncated powers (lower containment)."""
    special = default_special(g, LEAVITT, special)
    if bounds is None:
        bounds = center_bounds(g, field=field, special=special)
    if window is None:
        window = OracleWindow(LEAVITT, 4, (-4, 4))
    sub = central_subspace(g, window, field=field, special=special)
    notes = []

    upper_ok = True
    for r in bounds.records:
        claim_q = center_prime_leavitt(r.quotient, field=field)
        span = LinearSpan(field)
        for el in structural_truncation(claim_q, window):
            span.add(element_vector(el))
        for z in sub.basis:
            zq = project_to_quotient(z, r.H, r.quotient)
            if not check_central(zq) or not span.contains(element_vector(zq)):
                upper_ok = False
                notes.append(
                    f"projection of a central element escapes the upper bound "
                    f"at H={sorted(r.H)}")

    oracle_span = LinearSpan(field)
    for z in sub.basis:
        oracle_span.add(element_vector(z))
    lower_ok = True
    for summand in bounds.lower:
        for piece in summand.pieces:
            if piece.generator is None:
                continue
            if piece.kind == "laurent":
                unit = piece.generator * piece.generator.involution()
                claim = CenterStructure(LAURENT, (unit, piece.generator))
            else:
                claim = CenterStructure(SCALAR, (piece.generator,))
            for el in structural_truncation(claim, window):
                if not oracle_span.contains(element_vector(el)):
                    lower_ok = False
                    notes.append(
                        f"lower-bound generator power missing from the oracle "
                        f"span (record {summand.record_index})")

    radical_empty = not bounds.radical_vertices
    return BoundsVerification(
        ok=upper_ok and lower_ok and radical_empty,
        oracle_dim=sub.dim,
        upper_ok=upper_ok,
        lower_ok=lower_ok,
        radical_empty=radical_empty,
        notes=tuple(notes),
    )
