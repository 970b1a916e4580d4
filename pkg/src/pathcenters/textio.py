"""Graph file format and the shared element text syntax.

Graph files:  `#` comments, one `vertices:` line, then edge lines of the
form `edge <id>: <src> -> <rng>`.  Ids are alphanumeric/underscore.

Elements: terms joined by ` + `, each `scalar monomial`; a monomial is
`real|ghost` with `.`-separated edge ids, a bare vertex written `@v`, and
the ghost part omitted when trivial.  Scalars are exact `p/q` strings.
"""

from __future__ import annotations

import re

from .errors import GraphError, ParseError
from .graph import Graph, Path
from .graph_algebra import GAElement, default_special, normal_form
from .path_algebra import KEElement
from .scalars import QQ

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_EDGE_LINE_RE = re.compile(
    r"edge\s+([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)\Z"
)


def parse_graph(text: str) -> Graph:
    vertices = None
    edges = []
    vertices_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("second vertices: line", lineno)
            ids = line[len("vertices:"):].split()
            for v in ids:
                if not _ID_RE.match(v):
                    raise ParseError(f"bad vertex id {v!r}", lineno)
            if len(ids) != len(set(ids)):
                raise ParseError("duplicate vertex id", lineno)
            vertices = ids
            vertices_line = lineno
            continue
        m = _EDGE_LINE_RE.match(line)
        if m is None:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        if vertices is None:
            raise ParseError("edge line before the vertices: line", lineno)
        edges.append((lineno, m.group(1), m.group(2), m.group(3)))
    if vertices is None:
        raise ParseError("missing vertices: line", vertices_line)
    seen = set(vertices)
    triples = []
    for lineno, eid, s, r in edges:
        if eid in seen:
            raise ParseError(f"duplicate id {eid!r}", lineno)
        seen.add(eid)
        if s not in vertices:
            raise ParseError(f"unknown source vertex {s!r}", lineno)
        if r not in vertices:
            raise ParseError(f"unknown range vertex {r!r}", lineno)
        triples.append((eid, s, r))
    return Graph.build(vertices, triples)


def emit_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    for e in g.edges:
        lines.append(f"edge {e}: {g.src[e]} -> {g.rng[e]}")
    return "\n".join(lines) + "\n"


# --- element text -----------------------------------------------------------


def _path_to_text(p: Path) -> str:
    if p.is_trivial:
        return f"@{p.source}"
    return ".".join(p.edges)


def _monomial_to_text(m) -> str:
    if isinstance(m, Path):
        return _path_to_text(m)
    if m.ghost.is_trivial:
        return _path_to_text(m.real)
    return f"{_path_to_text(m.real)}|{_path_to_text(m.ghost)}"


def element_to_text(el) -> str:
    """Canonical text of an element; round-trips bit-exactly through parse."""
    field = el.field
    terms = []
    for m in el.support():
        terms.append(f"{field.text(el.coeffs[m])} {_monomial_to_text(m)}")
    return " + ".join(terms) if terms else "0"


def _parse_path_part(g: Graph, text: str) -> Path:
    text = text.strip()
    if not text:
        raise ParseError("empty path in monomial")
    if text.startswith("@"):
        v = text[1:]
        if v not in g._out:
            raise ParseError(f"unknown vertex {v!r}")
        return Path.vertex(g, v)
    edges = text.split(".")
    for e in edges:
        if e not in g.src:
            raise ParseError(f"unknown edge {e!r}")
    try:
        return Path.from_edges(g, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def parse_element(text: str, g: Graph, kind: str, *, special=None, field=QQ):
    """Parse element text into a KEElement (`kind='path'`) or GAElement."""
    text = text.strip()
    is_path_algebra = kind == "path"
    if not is_path_algebra:
        special = default_special(g, kind, special)
    if text == "0":
        if is_path_algebra:
            return KEElement.zero(g, field)
        return GAElement.zero(g, kind, special, field)
    if is_path_algebra:
        acc = KEElement.zero(g, field)
    else:
        acc = GAElement.zero(g, kind, special, field)
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ParseError("empty term in element")
        parts = term.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"term {term!r} needs a scalar and a monomial")
        try:
            coeff = field.parse(parts[0])
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        mono = parts[1].strip()
        if "|" in mono:
            real_text, ghost_text = mono.split("|", 1)
        else:
            real_text, ghost_text = mono, None
        real = _parse_path_part(g, real_text)
        if ghost_text is None:
            ghost = Path.vertex(g, real.target)
        else:
            ghost = _parse_path_part(g, ghost_text)
        if real.target != ghost.target:
            raise ParseError(
                f"monomial {mono!r}: real and ghost parts end at different vertices"
            )
        if is_path_algebra:
            if not ghost.is_trivial:
                raise ParseError("path algebra elements have no ghost part")
            acc = acc + KEElement.from_path(g, real, coeff, field)
        else:
            word = list(real.edges) + [e + "*" for e in reversed(ghost.edges)]
            if not word:
                word = [real.source]
            acc = acc + normal_form(g, kind, [(coeff, word)],
                                    special=special, field=field)
    return acc


def monomial_to_text(m) -> str:
    return _monomial_to_text(m)
