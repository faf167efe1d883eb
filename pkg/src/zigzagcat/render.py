"""Projection of diagrams to a layered graph and emission as SVG or text.

The projection keeps the two outermost dimensions: one row per top-level
height, one node per inner height of that row's slice, one edge per
monotone assignment between adjacent rows.  Nodes are classified by how
the dimension of their deepest label relates to the diagram dimension:
equal means vertex, one less means wire, anything else is region.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import LabelSignature
from .diagram import Diagram, REGULAR, SINGULAR
from .zigzag import Zigzag

VERTEX = "vertex"
WIRE = "wire"
REGION = "region"


@dataclass(frozen=True)
class Node:
    inner_kind: str  # "r" | "s"
    inner_index: int
    kind: str  # vertex | wire | region
    label: str
    color: str


@dataclass(frozen=True)
class Row:
    outer_kind: str  # "r" | "s"
    outer_index: int
    nodes: tuple


@dataclass(frozen=True)
class LayerGraph:
    dimension: int
    rows: tuple
    edges: tuple  # ((row, node), (row, node)) pairs between adjacent rows


def _deepest_label(signature: LabelSignature, payload) -> str:
    """The highest-dimensional label occurring in a payload; ties break
    toward the earliest occurrence."""
    if isinstance(payload, str):
        return payload
    best = _deepest_label(signature, payload.regulars[0])
    for s in payload.singulars:
        candidate = _deepest_label(signature, s)
        if signature.dim(candidate) > signature.dim(best):
            best = candidate
    for r in payload.regulars[1:]:
        candidate = _deepest_label(signature, r)
        if signature.dim(candidate) > signature.dim(best):
            best = candidate
    return best


def _classify(signature: LabelSignature, label: str, dimension: int) -> str:
    d = signature.dim(label)
    if d == dimension and dimension > 0:
        return VERTEX
    if d == dimension - 1:
        return WIRE
    return REGION


def _row(signature, payload, dimension, outer_kind, outer_index) -> Row:
    if not isinstance(payload, Zigzag):
        label = _deepest_label(signature, payload)
        node = Node("s", 0, _classify(signature, label, dimension), label,
                    signature.by_id(label).color)
        return Row(outer_kind, outer_index, (node,))
    nodes = []
    for i in range(payload.length + 1):
        label = _deepest_label(signature, payload.regulars[i])
        nodes.append(
            Node("r", i, _classify(signature, label, dimension), label,
                 signature.by_id(label).color)
        )
        if i < payload.length:
            label = _deepest_label(signature, payload.singulars[i])
            nodes.append(
                Node("s", i, _classify(signature, label, dimension), label,
                     signature.by_id(label).color)
            )
    return Row(outer_kind, outer_index, tuple(nodes))


def project(signature: LabelSignature, d: Diagram) -> LayerGraph:
    """Layered graph of the two outermost dimensions of ``d``."""
    if d.dimension == 0:
        payloads = [(REGULAR, 0, d.payload)]
    else:
        payloads = []
        z = d.payload
        for i in range(z.length + 1):
            payloads.append((REGULAR, i, z.regulars[i]))
            if i < z.length:
                payloads.append((SINGULAR, i, z.singulars[i]))

    rows = tuple(
        _row(signature, p, d.dimension, kind, index)
        for kind, index, p in payloads
    )

    edges = []
    if d.dimension >= 2:
        z = d.payload
        index_of = {}  # (row number, inner kind, inner index) -> node position
        for rn, row in enumerate(rows):
            for pos, node in enumerate(row.nodes):
                index_of[(rn, node.inner_kind, node.inner_index)] = pos
        for i in range(z.length):
            reg_row, sing_row = 2 * i, 2 * i + 1
            for p in range(z.forwards[i].sing_map.source_size):
                edges.append(
                    (
                        (reg_row, index_of[(reg_row, "s", p)]),
                        (sing_row, index_of[(sing_row, "s", z.forwards[i].sing_map(p))]),
                    )
                )
            for p in range(z.backwards[i].sing_map.source_size):
                edges.append(
                    (
                        (sing_row + 1, index_of[(sing_row + 1, "s", p)]),
                        (sing_row, index_of[(sing_row, "s", z.backwards[i].sing_map(p))]),
                    )
                )
    return LayerGraph(d.dimension, rows, tuple(edges))


def _coords(graph: LayerGraph, unit: int):
    """Pixel position of every node: x from the inner coordinate, y from
    the row number, counted upward from the bottom."""
    pts = {}
    height = len(graph.rows)
    for rn, row in enumerate(graph.rows):
        for pos, node in enumerate(row.nodes):
            x = (2 * node.inner_index + (1 if node.inner_kind == "s" else 0) + 1) * unit
            y = (height - rn) * unit
            pts[(rn, pos)] = (x, y)
    return pts


def emit_svg(graph: LayerGraph, style: dict | None = None) -> bytes:
    style = style or {}
    unit = int(style.get("unit", 40))
    width = (max((len(r.nodes) for r in graph.rows), default=1) + 1) * unit
    height = (len(graph.rows) + 1) * unit
    pts = _coords(graph, unit)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
    ]
    for (a, b) in graph.edges:
        (x1, y1), (x2, y2) = pts[a], pts[b]
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            'stroke="black" stroke-width="2"/>'
        )
    for rn, row in enumerate(graph.rows):
        for pos, node in enumerate(row.nodes):
            if node.kind == REGION:
                continue
            x, y = pts[(rn, pos)]
            color = node.color or ("black" if node.kind == VERTEX else "gray")
            radius = 6 if node.kind == VERTEX else 2
            parts.append(
                f'<circle cx="{x}" cy="{y}" r="{radius}" fill="{color}">'
                f"<title>{node.label}</title></circle>"
            )
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def emit_text(graph: LayerGraph) -> str:
    """One line per level, bottom level last, with ordinal annotations."""
    lines = []
    for rn, row in enumerate(graph.rows):
        cells = " ".join(
            f"{n.inner_kind}{n.inner_index}:{n.kind}({n.label})" for n in row.nodes
        )
        lines.append(f"[{rn}] {row.outer_kind}{row.outer_index}: {cells}")
    return "\n".join(lines)
