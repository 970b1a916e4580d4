"""Machine-readable reports: one dict shape rendered as text or JSON.

Field order is fixed by construction so both renderings are deterministic;
the JSON form validates against the schema shipped as report_schema.json.
"""

from __future__ import annotations

import json
import math
from importlib import resources

from .center_theory import CenterBounds, CenterStructure, SUM
from .graph import (
    Graph,
    classify_vertex,
    condition_L,
    connected_components,
    count_paths_ending_at_base,
    count_paths_ending_at_cycle,
    cycle_has_exit,
    cycles_without_exits,
    enumerate_hereditary_saturated,
    exit_free_cycle_vertices,
    find_cycles,
    is_downward_directed,
)
from .textio import element_to_text

SCHEMA_VERSION = 1


def _count(n):
    return "infinite" if n == math.inf else n


def graph_block(g: Graph, source: str):
    return {
        "source": source,
        "vertices": list(g.vertices),
        "edges": [{"id": e, "src": g.src[e], "rng": g.rng[e]} for e in g.edges],
    }


def new_report(command: str, g: Graph, source: str):
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "pathcenters",
        "command": command,
        "graph": graph_block(g, source),
        "sections": {},
    }


def predicates_section(g: Graph, max_vertices: int = 16):
    cycles = find_cycles(g)
    fc = cycles_without_exits(g)
    return {
        "sinks": [v for v in g.vertices if classify_vertex(g, v).sink],
        "sources": [v for v in g.vertices if classify_vertex(g, v).source],
        "regular": [v for v in g.vertices if classify_vertex(g, v).regular],
        "connected_components": [sorted(b) for b in connected_components(g)],
        "cycles": [
            {"edges": list(c.edges), "has_exit": cycle_has_exit(g, c)}
            for c in cycles
        ],
        "condition_L": condition_L(g),
        "downward_directed": is_downward_directed(g),
        "hereditary_saturated": [
            sorted(h) for h in enumerate_hereditary_saturated(g, max_vertices)
        ],
        "exit_free_cycle_vertices": sorted(exit_free_cycle_vertices(g)),
    }


def primeness_section(g: Graph):
    from .center_theory import is_prime_cohn, is_prime_leavitt

    return {
        "leavitt_prime": is_prime_leavitt(g),
        "cohn_prime": is_prime_cohn(g),
    }


def structure_block(cs: CenterStructure):
    out = {"structure": cs.describe()}
    if cs.kind == SUM:
        out["components"] = [structure_block(c) for c in cs.components]
    else:
        out["generators"] = [element_to_text(x) for x in cs.generators]
    return out


def cycle_counts_block(g: Graph):
    """Both path-count readings for every exit-free cycle, for the record."""
    out = []
    for c in cycles_without_exits(g):
        out.append({
            "cycle": list(c.edges),
            "paths_ending_not_all_edges": _count(count_paths_ending_at_cycle(g, c)),
            "paths_ending_at_base": _count(count_paths_ending_at_base(g, c)),
        })
    return out


def graded_primes_section(records):
    out = []
    for r in records:
        entry = {
            "H": sorted(r.H),
            "flavor": r.flavor,
            "witness": r.witness,
            "quotient_vertices": list(r.quotient.vertices),
        }
        if r.cycle is not None:
            entry["cycle"] = list(r.cycle.edges)
            entry["path_count"] = _count(r.path_count)
        out.append(entry)
    return out


def bounds_section(bounds: CenterBounds):
    lower = []
    for s in bounds.lower:
        lower.append({
            "record_index": s.record_index,
            "ideal_vertices": sorted(s.ideal_vertices),
            "improper": s.improper,
            "description": s.describe(),
            "pieces": [
                {
                    "kind": p.kind,
                    "detail": p.detail,
                    "generator": element_to_text(p.generator)
                    if p.generator is not None else None,
                }
                for p in s.pieces
            ],
        })
    return {
        "upper": list(bounds.upper),
        "upper_description": bounds.describe_upper(),
        "lower": lower,
        "lower_description": bounds.describe_lower(),
        "graded_baer_radical_vertices": sorted(bounds.radical_vertices),
    }


def oracle_section(subspace):
    w = subspace.window
    return {
        "algebra": w.kind,
        "max_len": w.max_len,
        "degrees": list(w.degrees) if w.degrees is not None else None,
        "candidates": subspace.candidate_count,
        "dimension": subspace.dim,
        "complete_within_window": subspace.complete_within_window,
        "basis": [element_to_text(el) for el in subspace.basis],
    }


def verification_block(rep):
    return {
        "ok": rep.ok,
        "generator_failures": [
            {"generator": gen, "witness": wit}
            for gen, wit in rep.generator_failures
        ],
        "outside_span": list(rep.outside_span),
        "oracle_dimension": rep.oracle_dim,
        "span_dimension": rep.span_dim,
    }


def bounds_verification_block(rep):
    return {
        "ok": rep.ok,
        "oracle_dimension": rep.oracle_dim,
        "upper_contains_oracle": rep.upper_ok,
        "oracle_contains_lower": rep.lower_ok,
        "graded_baer_radical_zero": rep.radical_empty,
        "notes": list(rep.notes),
    }


def add_notice(report, text):
    report["sections"].setdefault("notices", []).append(text)


# --- rendering ---------------------------------------------------------------


def render_json(report) -> str:
    return json.dumps(report, indent=2) + "\n"


def _is_scalar_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _render_value(value, indent, lines):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_scalar_list(v):
                lines.append(f"{pad}{k}: {', '.join(str(x) for x in v) or '(none)'}")
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                _render_value(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        if _is_scalar_list(value):
            lines.append(f"{pad}{', '.join(str(x) for x in value) or '(none)'}")
        else:
            for i, x in enumerate(value):
                lines.append(f"{pad}- [{i}]")
                _render_value(x, indent + 1, lines)
    else:
        lines.append(f"{pad}{value}")


def render_text(report) -> str:
    g = report["graph"]
    lines = [
        f"pathcenters {report['command']}: {g['source']}",
        f"graph: {len(g['vertices'])} vertices, {len(g['edges'])} edges",
    ]
    for name, section in report["sections"].items():
        lines.append(f"[{name}]")
        _render_value(section, 1, lines)
    return "\n".join(lines) + "\n"


def load_schema():
    with resources.files("pathcenters").joinpath("report_schema.json").open() as fh:
        return json.load(fh)
