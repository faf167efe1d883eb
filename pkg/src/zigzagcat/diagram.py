"""Typed n-diagrams: nested zigzags over the poset of labels.

A diagram of dimension 0 is a label id; a diagram of dimension n > 0 wraps a
zigzag whose objects are the payloads of (n-1)-diagrams.  The base category
for depth n is the zigzag base stacked n-1 times over the label poset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import BaseCategory, LabelPoset, LabelSignature, PosetMor
from .colimit import ZigzagBase
from .errors import (
    ConeMapMissing,
    DimensionMismatch,
    NotGlobular,
    PathOutOfRange,
)
from .monotone import Monotone
from .zigzag import Zigzag, ZigzagMap


@dataclass(frozen=True)
class Diagram:
    dimension: int
    payload: object  # label id at dimension 0, Zigzag above

    def __post_init__(self):
        if self.dimension == 0 and not isinstance(self.payload, str):
            raise ValueError("dimension-0 payload must be a label id")
        if self.dimension > 0 and not isinstance(self.payload, Zigzag):
            raise ValueError("positive-dimension payload must be a zigzag")


# path coordinates are ("r", i) or ("s", i), outermost first
REGULAR = "r"
SINGULAR = "s"


def slice_diagram(d: Diagram, path) -> Diagram:
    value = d.payload
    depth = d.dimension
    for step, (kind, i) in enumerate(path):
        if depth == 0:
            raise PathOutOfRange(f"coordinate {step} goes below dimension 0")
        row = value.regulars if kind == REGULAR else value.singulars
        if not 0 <= i < len(row):
            raise PathOutOfRange(f"coordinate {step}: index {i} out of range")
        value = row[i]
        depth -= 1
    return Diagram(depth, value)


def identity_suspend(d: Diagram) -> Diagram:
    return Diagram(d.dimension + 1, Zigzag.of_length_0(d.payload))


def base_for(signature: LabelSignature, dimension: int) -> BaseCategory:
    """The base category in which dimension-``dimension`` payloads live
    (i.e. the base of the top-level zigzag of such a diagram)."""
    base = LabelPoset(signature)
    for _ in range(dimension - 1):
        base = ZigzagBase(base)
    return base


def source_boundary(payload):
    return payload.regulars[0]


def target_boundary(payload):
    return payload.regulars[-1]


def _check_globular(payload, depth: int, where: str):
    """First and last regular slices must agree one level further down, at
    every level; this is what lets a cone pinch both ends together."""
    if depth <= 1:
        return
    src, tgt = source_boundary(payload), target_boundary(payload)
    if depth >= 2 and isinstance(src, Zigzag):
        if source_boundary(src) != source_boundary(tgt):
            raise NotGlobular(f"{where}: sources of boundaries differ")
        if target_boundary(src) != target_boundary(tgt):
            raise NotGlobular(f"{where}: targets of boundaries differ")
        _check_globular(src, depth - 1, where)
        _check_globular(tgt, depth - 1, where)
    for s in payload.singulars:
        if isinstance(s, Zigzag):
            _check_globular(s, depth - 1, where)


def _cone_payload(signature, label_id, boundary, depth):
    """The depth-``depth`` cone: a tower of length-1 zigzags pinching the
    boundary chain of ``boundary`` together onto the label at the bottom."""
    if depth == 0:
        return label_id
    src, tgt = source_boundary(boundary), target_boundary(boundary)
    inner = _cone_payload(
        signature, label_id, src if depth > 1 else None, depth - 1
    )
    return Zigzag(
        (src, tgt),
        (inner,),
        (_collapse(signature, src, inner, depth - 1),),
        (_collapse(signature, tgt, inner, depth - 1),),
    )


def _collapse(signature, payload, cone, depth):
    """The map squashing every height of a depth-``depth`` payload onto the
    single height of the matching cone (a poset morphism at depth 0)."""
    if depth == 0:
        if not LabelPoset(signature).le(payload, cone):
            raise ConeMapMissing(f"label {payload} does not sit below {cone}")
        return PosetMor(payload, cone)
    cone_zig = cone  # a length-1 zigzag whose singular is the next cone down
    if (
        payload.regulars[0] != cone_zig.regulars[0]
        or payload.regulars[-1] != cone_zig.regulars[-1]
    ):
        raise NotGlobular("boundary of collapsed object differs from cone")
    return ZigzagMap(
        payload,
        cone_zig,
        Monotone.constant(payload.length, 1, 0),
        tuple(
            _collapse(signature, s, cone_zig.singulars[0], depth - 1)
            for s in payload.singulars
        ),
    )


def cone_generator(
    signature: LabelSignature, label_id: str, source: Diagram, target: Diagram
) -> Diagram:
    """A generator cell: the length-1 zigzag from source to target whose
    singular object is the iterated cone bottoming out at the label."""
    dim = signature.dim(label_id)
    if dim < 1:
        raise DimensionMismatch("cannot build a cone for a point label")
    if source.dimension != dim - 1 or target.dimension != dim - 1:
        raise DimensionMismatch(
            f"boundaries of {label_id} must have dimension {dim - 1}"
        )
    if dim >= 2:
        sp, tp = source.payload, target.payload
        if source_boundary(sp) != source_boundary(tp):
            raise NotGlobular("sources of source and target differ")
        if target_boundary(sp) != target_boundary(tp):
            raise NotGlobular("targets of source and target differ")
        _check_globular(sp, dim - 1, "source")
        _check_globular(tp, dim - 1, "target")
    inner = _cone_payload(
        signature,
        label_id,
        source.payload if dim >= 2 else None,
        dim - 1,
    )
    zig = Zigzag(
        (source.payload, target.payload),
        (inner,),
        (_collapse(signature, source.payload, inner, dim - 1),),
        (_collapse(signature, target.payload, inner, dim - 1),),
    )
    return Diagram(dim, zig)


def validate_dimensions(signature: LabelSignature, d: Diagram) -> list:
    """Labels may only appear at positions with at least as many singular
    coordinates as their dimension; returns (path, label) violations."""
    out = []

    def walk(value, depth, path, singular_count):
        if depth == 0:
            if not signature.has(value) or signature.dim(value) > singular_count:
                out.append((path, value))
            return
        for i, r in enumerate(value.regulars):
            walk(r, depth - 1, path + ((REGULAR, i),), singular_count)
        for i, s in enumerate(value.singulars):
            walk(s, depth - 1, path + ((SINGULAR, i),), singular_count + 1)

    walk(d.payload, d.dimension, (), 0)
    return out
