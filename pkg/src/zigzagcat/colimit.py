"""Colimits of connected diagrams of zigzags, contraction of a single
zigzag, and the adapter that makes the zigzag category itself a base.

The colimit procedure runs in six steps: (1) colimit of the singular-height
orders, (2)-(3) the legs' monotone parts are its legs, (4) one base colimit
per apex height over the deconstructed restriction of the diagram to that
height's window, (5)-(6) assembly of the apex zigzag and legs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catcore import BaseCategory, Cocone, DiagramShape, check_connected
from .errors import (
    BaseColimitFailed,
    BiasRequired,
    ColimitFailed,
    DeltaColimitFailed,
    EngineError,
    InvalidWindow,
    NoColimit,
    ValidationFailed,
)
from .monotone import (
    Bias,
    DeltaDiagram,
    Monotone,
    biased_cocone,
    delta_colimit,
    reversal,
)
from .zigzag import (
    Zigzag,
    ZigzagDiagram,
    ZigzagMap,
    _trusted_zigzag_diagram,
    compose_maps,
    deconstruct,
    identity_map,
    restrict,
    restrict_map,
    validate_map,
)


@dataclass(frozen=True)
class ZigzagCocone:
    apex: Zigzag
    legs: tuple  # one ZigzagMap per node, into the apex


@lru_cache(maxsize=None)
def _delta_verdict(d: DeltaDiagram):
    """(cocone, None) on success, (None, failure) otherwise; cached, since
    nested diagrams share a small universe of monotone skeletons."""
    try:
        return delta_colimit(d), None
    except NoColimit as e:
        return None, e


@lru_cache(maxsize=1 << 15)
def _height_colimit(base: BaseCategory, restricted: ZigzagDiagram, bias):
    """Deconstruct the window-restricted diagram of one apex height and take
    its base colimit; cached, since windows recur across larger diagrams.

    Returns (cocone, failure, node_of); exactly one of the first two is None.
    """
    dec = deconstruct(base, restricted)
    try:
        col = base.connected_colimit(dec.shape, dec.objects, dec.arrows, bias)
    except EngineError as e:
        return None, e, dec.node_of
    return col, None, dec.node_of


def zigzag_colimit(
    base: BaseCategory, d: ZigzagDiagram, bias: Bias = Bias.NONE
) -> ZigzagCocone:
    """Colimit of a connected diagram of zigzags over ``base``.

    With a bias other than NONE, a failing singular-height colimit falls
    back to the biased cocone, yielding a mere cocone instead of a colimit.
    """
    check_connected(d.shape)
    # the delta diagram fits by the diagram's own validation, so skip checks
    sing_diagram = object.__new__(DeltaDiagram)
    sd_dict = sing_diagram.__dict__
    sd_dict["shape"] = d.shape
    sd_dict["sizes"] = tuple(z.length for z in d.objects)
    sd_dict["maps"] = tuple(m.sing_map for m in d.maps)
    delta, delta_failure = _delta_verdict(sing_diagram)
    if delta is None:
        if bias is Bias.NONE:
            raise DeltaColimitFailed(delta_failure)
        delta = biased_cocone(sing_diagram, bias)

    revs = tuple(reversal(leg).values for leg in delta.legs)
    apex_regulars = tuple(
        d.objects[0].regulars[k] for k in revs[0]
    )

    apex_singulars = []
    apex_forwards = []
    apex_backwards = []
    # slice morphism of each node's leg, indexed by source height
    slices_by_node = [[None] * z.length for z in d.objects]
    for k in range(delta.size):
        windows = [(revs[j][k], revs[j][k + 1]) for j in d.shape.nodes]
        restricted = _trusted_zigzag_diagram(
            d.shape,
            tuple(
                restrict(d.objects[j], *windows[j]) for j in d.shape.nodes
            ),
            tuple(
                restrict_map(m, *windows[t])
                for (s, t), m in zip(d.shape.arrows, d.maps)
            ),
        )
        col, err, node_of = _height_colimit(base, restricted, bias)
        if col is None:
            raise BaseColimitFailed(k, err)

        j0 = next(
            j for j in d.shape.nodes if windows[j][1] > windows[j][0]
        )
        first = restricted.objects[j0]
        legs_of_col = col.legs
        apex_singulars.append(col.apex)
        apex_forwards.append(
            base.compose(first.forwards[0], legs_of_col[node_of[(j0, "s", 0)]])
        )
        apex_backwards.append(
            base.compose(
                first.backwards[-1],
                legs_of_col[node_of[(j0, "s", first.length - 1)]],
            )
        )
        for j in d.shape.nodes:
            lo, hi = windows[j]
            if lo < hi:
                soff = node_of[(j, "s", 0)]
                row = slices_by_node[j]
                for i in range(lo, hi):
                    row[i] = legs_of_col[soff + i - lo]

    apex = Zigzag(
        apex_regulars,
        tuple(apex_singulars),
        tuple(apex_forwards),
        tuple(apex_backwards),
    )
    legs = tuple(
        ZigzagMap(d.objects[j], apex, delta.legs[j], tuple(slices_by_node[j]))
        for j in d.shape.nodes
    )
    for leg in legs:
        bad = validate_map(base, leg)
        if bad:
            raise ValidationFailed([("colimit leg", v) for v in bad])
    return ZigzagCocone(apex, legs)


def contract_zigzag(
    base: BaseCategory, z: Zigzag, a: int, b: int, bias: Bias = Bias.NONE
) -> tuple:
    """Collapse the regular window (a, b) of z to a single singular height.

    The new singular object is the base colimit of the interior span chain
    s_a <- r_{a+1} -> s_{a+1} <- ... -> s_{b-1}; the outer regular objects
    take no part in it and are reattached by composition.  Returns the
    contracted zigzag together with the map from z into it.
    """
    if not (0 <= a < b <= z.length):
        raise InvalidWindow(f"window {a}..{b} not within 0..{z.length}")

    m = b - a
    num = 2 * m - 1  # interior objects: m singulars, m-1 regulars
    objects = []
    for i in range(a, b):
        objects.append(z.singulars[i])
        if i + 1 < b:
            objects.append(z.regulars[i + 1])
    arrows = []
    morphisms = []
    for i in range(m - 1):
        # interior regular r_{a+i+1} sits at index 2i+1, its singulars at 2i, 2i+2
        arrows.append((2 * i + 1, 2 * i))
        morphisms.append(z.backwards[a + i])
        arrows.append((2 * i + 1, 2 * i + 2))
        morphisms.append(z.forwards[a + i + 1])
    shape = DiagramShape(num, tuple(arrows))
    try:
        col = base.connected_colimit(shape, tuple(objects), tuple(morphisms), bias)
    except (BiasRequired, ColimitFailed, DeltaColimitFailed, BaseColimitFailed):
        raise
    except EngineError as e:
        raise ColimitFailed("connected_colimit", e)

    forward = base.compose(z.forwards[a], col.legs[0])
    backward = base.compose(z.backwards[b - 1], col.legs[num - 1])
    result = Zigzag(
        z.regulars[: a + 1] + z.regulars[b:],
        z.singulars[:a] + (col.apex,) + z.singulars[b:],
        z.forwards[:a] + (forward,) + z.forwards[b:],
        z.backwards[:a] + (backward,) + z.backwards[b:],
    )
    sing = Monotone(
        z.length,
        z.length - m + 1,
        tuple(
            i if i < a else (a if i < b else i - m + 1) for i in range(z.length)
        ),
    )
    slices = tuple(
        base.identity(z.singulars[i])
        if not a <= i < b
        else col.legs[2 * (i - a)]
        for i in range(z.length)
    )
    return result, ZigzagMap(z, result, sing, slices)


class ZigzagBase(BaseCategory):
    """The zigzag category over a base, itself packaged as a base.

    Stacking this adapter n times gives the category of untyped or typed
    n-diagrams, and its connected_colimit is the recursive engine behind
    contraction at depth.
    """

    def __init__(self, base: BaseCategory):
        self.base = base

    def identity(self, obj: Zigzag) -> ZigzagMap:
        return identity_map(self.base, obj)

    def source(self, mor: ZigzagMap) -> Zigzag:
        return mor.source

    def target(self, mor: ZigzagMap) -> Zigzag:
        return mor.target

    def compose(self, f: ZigzagMap, g: ZigzagMap) -> ZigzagMap:
        return compose_maps(self.base, f, g)

    def terminal(self):
        t = self.base.terminal()
        if t is None:
            return None
        loop = self.base.identity(t)
        return Zigzag((t, t), (t,), (loop,), (loop,))

    def local_terminal(self, a, b) -> Zigzag:
        """The zigzag a -> * <- b; terminal among zigzags with boundary (a, b)
        when the underlying base has a terminal object."""
        t = self.base.terminal()
        if t is None:
            raise NoColimit("NoUpperBound", "underlying base has no terminal")
        return Zigzag(
            (a, b), (t,), (self.base.to_terminal(a),), (self.base.to_terminal(b),)
        )

    def to_terminal(self, obj: Zigzag) -> ZigzagMap:
        target = self.local_terminal(obj.regulars[0], obj.regulars[-1])
        return ZigzagMap(
            obj,
            target,
            Monotone.constant(obj.length, 1, 0),
            tuple(self.base.to_terminal(s) for s in obj.singulars),
        )

    def connected_colimit(self, shape, objects, arrows, bias=None) -> Cocone:
        d = ZigzagDiagram(shape, tuple(objects), tuple(arrows))
        cocone = zigzag_colimit(
            self.base, d, bias if bias is not None else Bias.NONE
        )
        return Cocone(cocone.apex, cocone.legs)
