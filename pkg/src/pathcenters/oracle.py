"""Brute-force centrality oracle over exact scalars.

Independent of the structure theorems: it enumerates every normal-form
monomial inside a bounded window, assembles the exact commutation
constraints [z, g] = 0 against all algebra generators, and solves them by
sparse exact elimination.  Products are normalized in the full algebra, so
the constraints are exact even when they leave the window; "complete within
window" therefore means complete for the candidate span, with no spurious
solutions from clipped products.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import AmbientError, ResourceCapExceeded
from .graph import Graph, Path, all_paths_up_to
from .graph_algebra import (
    COHN,
    LEAVITT,
    GAElement,
    GMonomial,
    default_special,
    enumerate_ga_monomials,
    mul_monomials,
)
from .linalg import LinearSpan, sparse_nullspace
from .path_algebra import KEElement
from .scalars import QQ

PATH = "path"
ALGEBRA_KINDS = (PATH, COHN, LEAVITT)

DEFAULT_MONOMIAL_CAP = 20_000
MONOMIAL_CAP_ENV = "PATHCENTERS_MAX_MONOMIALS"


def monomial_cap(explicit=None):
    if explicit is not None:
        return explicit
    env = os.environ.get(MONOMIAL_CAP_ENV)
    return int(env) if env else DEFAULT_MONOMIAL_CAP


@dataclass(frozen=True)
class OracleWindow:
    """Bounded search space: both monomial parts of length <= max_len,
    optionally filtered to a degree window."""

    kind: str
    max_len: int
    degrees: tuple | None = None

    def __post_init__(self):
        if self.kind not in ALGEBRA_KINDS:
            raise AmbientError(f"unknown algebra kind {self.kind!r}")
        if self.max_len < 0:
            raise AmbientError("window length bound must be >= 0")
        if self.degrees is not None:
            a, b = self.degrees
            if a > b:
                raise AmbientError("empty degree window")
            if max(abs(a), abs(b)) > self.max_len:
                raise AmbientError(
                    "degree filter inconsistent with the length bound"
                )

    @classmethod
    def single_degree(cls, kind, max_len, n):
        return cls(kind, max_len, (n, n))

    def admits_degree(self, d):
        return self.degrees is None or self.degrees[0] <= d <= self.degrees[1]


@dataclass(frozen=True)
class CentralSubspace:
    basis: tuple
    window: OracleWindow
    candidate_count: int = 0
    complete_within_window: bool = True

    @property
    def dim(self):
        return len(self.basis)


# --- generators and monomial-level products ---------------------------------


def algebra_generators(g: Graph, kind, *, special=None, field=QQ):
    """Labelled generating set: vertices, edges, plus ghost edges when the
    algebra has them.  Sound and complete for centrality checks."""
    gens = []
    if kind == PATH:
        for v in g.vertices:
            gens.append((f"@{v}", KEElement.vertex(g, v, field=field)))
        for e in g.edges:
            gens.append((e, KEElement.from_path(g, Path.from_edges(g, (e,)),
                                                field=field)))
        return gens
    special = default_special(g, kind, special)
    for v in g.vertices:
        gens.append((f"@{v}", GAElement.vertex(g, kind, v, special=special,
                                               field=field)))
    for e in g.edges:
        gens.append((e, GAElement.edge(g, kind, e, special=special, field=field)))
    for e in g.edges:
        gens.append((f"{e}*", GAElement.ghost_edge(g, kind, e, special=special,
                                                   field=field)))
    return gens


def check_central(a) -> bool:
    return centrality_witness(a) is None


def centrality_witness(a):
    """The first generator that fails to commute with `a`, or None."""
    if isinstance(a, KEElement):
        gens = algebra_generators(a.graph, PATH, field=a.field)
    else:
        gens = algebra_generators(a.graph, a.kind, special=a.special,
                                  field=a.field)
    for label, gel in gens:
        if a * gel != gel * a:
            return label, gel
    return None


def _path_candidates(g, window):
    return [p for p in all_paths_up_to(g, window.max_len)
            if window.admits_degree(p.length)]


def _ga_candidates(g, window, special):
    return enumerate_ga_monomials(g, window.kind, window.max_len,
                                  degrees=window.degrees, special=special)


def _path_product(g, field, p, q):
    if p.target != q.source:
        return {}
    return {Path(p.source, q.target, p.edges + q.edges): field.one}


def enumerate_candidates(g: Graph, window: OracleWindow, *, special=None,
                         cap=None):
    """Window candidates, checked against the configured resource cap."""
    cap = monomial_cap(cap)
    if window.kind == PATH:
        cands = _path_candidates(g, window)
    else:
        cands = _ga_candidates(g, window, special)
    if len(cands) > cap:
        raise ResourceCapExceeded(
            f"window holds {len(cands)} candidate monomials; cap is {cap}",
            needed=len(cands),
            cap=cap,
        )
    return cands


def central_subspace(g: Graph, window: OracleWindow, *, field=QQ, special=None,
                     cap=None) -> CentralSubspace:
    """Exact basis of all window elements commuting with every generator."""
    kind = window.kind
    if kind != PATH:
        special = default_special(g, kind, special)
    candidates = enumerate_candidates(g, window, special=special, cap=cap)

    if kind == PATH:
        gen_monomials = [Path.vertex(g, v) for v in g.vertices]
        gen_monomials += [Path.from_edges(g, (e,)) for e in g.edges]
        product = lambda m, q: _path_product(g, field, m, q)
    else:
        gen_monomials = [GMonomial.at_vertex(g, v) for v in g.vertices]
        for e in g.edges:
            p = Path.from_edges(g, (e,))
            t = Path.vertex(g, g.rng[e])
            gen_monomials.append(GMonomial(p, t))
        for e in g.edges:
            p = Path.from_edges(g, (e,))
            t = Path.vertex(g, g.rng[e])
            gen_monomials.append(GMonomial(t, p))
        product = lambda m, q: mul_monomials(g, kind, special, field, m, q)

    rows = {}
    for gi, gmon in enumerate(gen_monomials):
        for j, m in enumerate(candidates):
            for rm, c in product(m, gmon).items():
                row = rows.setdefault((gi, rm), {})
                row[j] = field.add(row.get(j, field.zero), c)
            for rm, c in product(gmon, m).items():
                row = rows.setdefault((gi, rm), {})
                row[j] = field.sub(row.get(j, field.zero), c)
    cleaned = (
        {j: c for j, c in row.items() if c != field.zero} for row in rows.values()
    )
    vectors = sparse_nullspace((r for r in cleaned if r), len(candidates), field)

    basis = []
    for vec in vectors:
        coeffs = {candidates[j]: c for j, c in vec.items()}
        if kind == PATH:
            el = KEElement(g, field, coeffs)
        else:
            el = GAElement(kind, g, special, field, coeffs)
        basis.append(el)

    for el in basis:  # soundness re-check, post-solve
        witness = centrality_witness(el)
        if witness is not None:
            raise RuntimeError(
                f"oracle solver produced a non-central vector (witness {witness[0]})"
            )
    return CentralSubspace(tuple(basis), window, len(candidates))


def graded_center_component(g: Graph, kind, n: int, max_len: int, *, field=QQ,
                            special=None, cap=None) -> CentralSubspace:
    """The bounded view of the degree-n homogeneous component of the center."""
    window = OracleWindow.single_degree(kind, max_len, n)
    return central_subspace(g, window, field=field, special=special, cap=cap)


# --- verification of structural claims --------------------------------------


def element_vector(el):
    return {m.sort_key(): c for m, c in el.coeffs.items()}


def _monomial_fits(window, m):
    if isinstance(m, Path):
        return m.length <= window.max_len and window.admits_degree(m.length)
    return (
        m.real.length <= window.max_len
        and m.ghost.length <= window.max_len
        and window.admits_degree(m.degree)
    )


def element_fits_window(el, window) -> bool:
    return all(_monomial_fits(window, m) for m in el.coeffs)


def _claim_structures(claim):
    if claim.kind == "sum":
        return list(claim.components)
    return [claim]


def structural_truncation(claim, window):
    """Window-compatible spanning elements of a claimed center structure.

    Scalar pieces contribute their identity; polynomial and Laurent pieces
    contribute every power of their generator that stays inside the window
    (negative powers through the involution, which inverts the generator).
    """
    out = []
    for piece in _claim_structures(claim):
        if piece.kind == "zero" or not piece.generators:
            continue
        one = piece.generators[0]
        if element_fits_window(one, window):
            out.append(one)
        if piece.kind in ("poly", "laurent"):
            z = piece.generators[1]
            acc = z
            for _ in range(4 * window.max_len + 4):
                if not element_fits_window(acc, window):
                    break
                out.append(acc)
                acc = acc * z
            if piece.kind == "laurent":
                zi = z.involution()
                acc = zi
                for _ in range(4 * window.max_len + 4):
                    if not element_fits_window(acc, window):
                        break
                    out.append(acc)
                    acc = acc * zi
    return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    generator_failures: tuple = ()
    outside_span: tuple = ()
    oracle_dim: int = 0
    span_dim: int = 0
    notes: tuple = ()


def verify_structure(claim, g: Graph, window: OracleWindow, *, field=QQ,
                     special=None, cap=None) -> VerificationReport:
    """Cross-check a structural center claim against the oracle.

    (a) every claimed generator must commute with every algebra generator;
    (b) the oracle's window basis must lie in the span of the claim's
        truncated powers; mismatches are reported with the offending data.
    """
    failures = []
    for piece in _claim_structures(claim):
        for gen in piece.generators:
            witness = centrality_witness(gen)
            if witness is not None:
                failures.append((repr(gen), witness[0]))

    subspace = central_subspace(g, window, field=field, special=special, cap=cap)
    span = LinearSpan(field)
    for el in structural_truncation(claim, window):
        span.add(element_vector(el))
    outside = []
    for el in subspace.basis:
        if not span.contains(element_vector(el)):
            outside.append(repr(el))
    ok = not failures and not outside
    return VerificationReport(
        ok=ok,
        generator_failures=tuple(failures),
        outside_span=tuple(outside),
        oracle_dim=subspace.dim,
        span_dim=span.dim,
    )
