"""Zigzags and zigzag maps over an arbitrary base category.

A zigzag of length n is an alternating cospan chain

    r0 -> s0 <- r1 -> s1 <- ... <- rn

with regular objects r and singular objects s.  A zigzag map carries a
monotone function on singular heights plus one base morphism per source
height, subject to the regular-object equalities and commuting squares
checked by validate_map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catcore import BaseCategory, DiagramShape
from .errors import BoundaryMismatch, IndexOutOfRange, SizeMismatch, ValidationFailed
from .monotone import (
    Monotone,
    RegularMonotone,
    _trusted_monotone,
    compose,
    reversal,
)


@dataclass(frozen=True)
class Zigzag:
    regulars: tuple
    singulars: tuple
    forwards: tuple
    backwards: tuple

    def __post_init__(self):
        object.__setattr__(self, "regulars", tuple(self.regulars))
        object.__setattr__(self, "singulars", tuple(self.singulars))
        object.__setattr__(self, "forwards", tuple(self.forwards))
        object.__setattr__(self, "backwards", tuple(self.backwards))
        n = len(self.singulars)
        if len(self.regulars) != n + 1:
            raise ValueError("need one more regular object than singular")
        if len(self.forwards) != n or len(self.backwards) != n:
            raise ValueError("need one forward and one backward map per height")
        # plain attribute, not a property: the length is read in hot loops
        object.__setattr__(self, "length", n)

    def __hash__(self):
        # cached: zigzags nest and recur as dictionary keys in the colimit
        # machinery, and dataclass hashing walks the whole structure
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(
                (self.regulars, self.singulars, self.forwards, self.backwards)
            )
            object.__setattr__(self, "_hash", h)
        return h

    @staticmethod
    def of_length_0(obj) -> "Zigzag":
        return Zigzag((obj,), (), (), ())


@lru_cache(maxsize=1 << 15)
def validate_zigzag(base: BaseCategory, z: Zigzag) -> list:
    """Endpoint consistency of every cospan; returns a violation list.

    Cached: the same zigzags are re-validated constantly as sources and
    targets of maps (the result list must not be mutated by callers).
    """
    out = []
    for i in range(z.length):
        f, b = z.forwards[i], z.backwards[i]
        if base.source(f) != z.regulars[i]:
            out.append((i, "forward source"))
        if base.target(f) != z.singulars[i]:
            out.append((i, "forward target"))
        if base.source(b) != z.regulars[i + 1]:
            out.append((i, "backward source"))
        if base.target(b) != z.singulars[i]:
            out.append((i, "backward target"))
    return out


@dataclass(frozen=True)
class ZigzagMap:
    source: Zigzag
    target: Zigzag
    sing_map: Monotone
    slices: tuple

    def __post_init__(self):
        object.__setattr__(self, "slices", tuple(self.slices))
        if self.sing_map.source_size != self.source.length:
            raise SizeMismatch("sing_map source disagrees with source length")
        if self.sing_map.target_size != self.target.length:
            raise SizeMismatch("sing_map target disagrees with target length")
        if len(self.slices) != self.source.length:
            raise SizeMismatch("need one slice morphism per source height")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, self.sing_map, self.slices))
            object.__setattr__(self, "_hash", h)
        return h


def regular_map(m: ZigzagMap) -> RegularMonotone:
    return reversal(m.sing_map)


@lru_cache(maxsize=1 << 15)
def validate_map(base: BaseCategory, m: ZigzagMap) -> list:
    """The full structure check; returns a violation list, empty when valid.
    Cached; the result list must not be mutated by callers.

    (a) regular objects are equal along the reversal of the singular map;
    (b) at each target height with nonempty preimage the outer composites
        match the target cospan and interior composites agree pairwise;
    (c) at each target height with empty preimage the target cospan is a
        fork: forward equals backward.
    """
    out = []
    out += [("source", v) for v in validate_zigzag(base, m.source)]
    out += [("target", v) for v in validate_zigzag(base, m.target)]
    if out:
        return out

    src, tgt = m.source, m.target
    sing = m.sing_map.values
    src_regs, tgt_regs = src.regulars, tgt.regulars
    src_sings, tgt_sings = src.singulars, tgt.singulars
    slices = m.slices
    for j, rj in enumerate(reversal(m.sing_map).values):
        if src_regs[rj] != tgt_regs[j]:
            out.append((j, "regular objects differ"))
    for i, g in enumerate(slices):
        if base.source(g) != src_sings[i]:
            out.append((i, "slice source"))
        elif base.target(g) != tgt_sings[sing[i]]:
            out.append((i, "slice target"))
    if out:
        return out

    # group the source heights by target height in one monotone pass
    preimages = [[] for _ in range(tgt.length)]
    for i, t in enumerate(sing):
        preimages[t].append(i)
    compose_ = base.compose
    for t, pre in enumerate(preimages):
        if not pre:
            if tgt.forwards[t] != tgt.backwards[t]:
                out.append((t, "empty preimage needs forward = backward"))
            continue
        first, last = pre[0], pre[-1]
        if tgt.forwards[t] != compose_(src.forwards[first], slices[first]):
            out.append((t, "forward composite"))
        if tgt.backwards[t] != compose_(src.backwards[last], slices[last]):
            out.append((t, "backward composite"))
        for i in pre[:-1]:
            left = compose_(src.backwards[i], slices[i])
            right = compose_(src.forwards[i + 1], slices[i + 1])
            if left != right:
                out.append((t, f"interior square at source height {i}"))
    return out


def check_map(base: BaseCategory, m: ZigzagMap) -> ZigzagMap:
    violations = validate_map(base, m)
    if violations:
        raise ValidationFailed(violations)
    return m


def identity_map(base: BaseCategory, z: Zigzag) -> ZigzagMap:
    return ZigzagMap(
        z,
        z,
        Monotone.identity(z.length),
        tuple(base.identity(s) for s in z.singulars),
    )


def compose_maps(base: BaseCategory, m1: ZigzagMap, m2: ZigzagMap) -> ZigzagMap:
    if m1.target != m2.source:
        raise BoundaryMismatch("maps are not composable")
    slices = tuple(
        base.compose(m1.slices[i], m2.slices[v])
        for i, v in enumerate(m1.sing_map.values)
    )
    return ZigzagMap(
        m1.source, m2.target, compose(m1.sing_map, m2.sing_map), slices
    )


def boundaries(z: Zigzag) -> tuple:
    return (z.regulars[0], z.regulars[-1])


def concatenate(z1: Zigzag, z2: Zigzag) -> Zigzag:
    if z1.regulars[-1] != z2.regulars[0]:
        raise BoundaryMismatch("last regular of the first zigzag differs")
    return Zigzag(
        z1.regulars + z2.regulars[1:],
        z1.singulars + z2.singulars,
        z1.forwards + z2.forwards,
        z1.backwards + z2.backwards,
    )


def concatenate_maps(m1: ZigzagMap, m2: ZigzagMap) -> ZigzagMap:
    source = concatenate(m1.source, m2.source)
    target = concatenate(m1.target, m2.target)
    n1, t1 = m1.source.length, m1.target.length
    sing = Monotone(
        source.length,
        target.length,
        m1.sing_map.values + tuple(v + t1 for v in m2.sing_map.values),
    )
    return ZigzagMap(source, target, sing, m1.slices + m2.slices)


@lru_cache(maxsize=1 << 15)
def restrict(z: Zigzag, a: int, b: int) -> Zigzag:
    if not (0 <= a <= b <= z.length):
        raise IndexOutOfRange(f"window {a}..{b} not within 0..{z.length}")
    return Zigzag(
        z.regulars[a : b + 1],
        z.singulars[a:b],
        z.forwards[a:b],
        z.backwards[a:b],
    )


@lru_cache(maxsize=1 << 15)
def restrict_map(m: ZigzagMap, a: int, b: int) -> ZigzagMap:
    """Restrict to the target regular window (a, b); the source window is
    induced by the reversal of the singular map."""
    if not (0 <= a <= b <= m.target.length):
        raise IndexOutOfRange(f"window {a}..{b} not within 0..{m.target.length}")
    reg = reversal(m.sing_map)
    ra, rb = reg(a), reg(b)
    sing = _trusted_monotone(
        rb - ra, b - a, tuple(v - a for v in m.sing_map.values[ra:rb])
    )
    return ZigzagMap(
        restrict(m.source, ra, rb),
        restrict(m.target, a, b),
        sing,
        m.slices[ra:rb],
    )


@dataclass(frozen=True)
class ZigzagDiagram:
    shape: DiagramShape
    objects: tuple  # one Zigzag per node
    maps: tuple  # one ZigzagMap per arrow

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.objects) != self.shape.num_nodes:
            raise ValueError("one zigzag per node required")
        if len(self.maps) != len(self.shape.arrows):
            raise ValueError("one map per arrow required")
        for (s, t), m in zip(self.shape.arrows, self.maps):
            if m.source != self.objects[s] or m.target != self.objects[t]:
                raise ValueError(f"map does not fit arrow ({s},{t})")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.shape, self.objects, self.maps))
            object.__setattr__(self, "_hash", h)
        return h


def _trusted_zigzag_diagram(shape, objects, maps) -> ZigzagDiagram:
    """Construct a ZigzagDiagram whose fit is guaranteed by construction,
    skipping validation; internal to the colimit machinery."""
    d = object.__new__(ZigzagDiagram)
    object.__setattr__(d, "shape", shape)
    object.__setattr__(d, "objects", objects)
    object.__setattr__(d, "maps", maps)
    return d


@dataclass(frozen=True)
class Deconstruction:
    """The flattened base-category diagram of a diagram of zigzags.

    Nodes are the regular and singular heights of every zigzag; arrows are
    the cospans within each zigzag, the slice morphisms of each map, and
    identity arrows witnessing the regular-object equalities (reversed:
    they point from target-zigzag heights back to source-zigzag heights).
    """

    shape: DiagramShape
    objects: tuple
    arrows: tuple
    node_of: dict  # (node, "r" | "s", height) -> flattened node index


def deconstruct(base: BaseCategory, d: ZigzagDiagram) -> Deconstruction:
    # node (j, "r", i) flattens to roff[j] + i and (j, "s", i) to soff[j] + i
    node_of = {}
    objects = []
    roff = []
    soff = []
    for j in d.shape.nodes:
        z = d.objects[j]
        base_j = len(objects)
        roff.append(base_j)
        soff.append(base_j + z.length + 1)
        objects.extend(z.regulars)
        objects.extend(z.singulars)
        for i in range(z.length + 1):
            node_of[(j, "r", i)] = base_j + i
        for i in range(z.length):
            node_of[(j, "s", i)] = soff[j] + i

    arrows = []
    morphisms = []
    for j in d.shape.nodes:
        z = d.objects[j]
        rj, sj = roff[j], soff[j]
        for i in range(z.length):
            arrows.append((rj + i, sj + i))
            morphisms.append(z.forwards[i])
            arrows.append((rj + i + 1, sj + i))
            morphisms.append(z.backwards[i])
    for (s, t), m in zip(d.shape.arrows, d.maps):
        ss, st, rs, rt = soff[s], soff[t], roff[s], roff[t]
        for i, v in enumerate(m.sing_map.values):
            arrows.append((ss + i, st + v))
            morphisms.append(m.slices[i])
        tgt_regs = m.target.regulars
        for i, v in enumerate(reversal(m.sing_map).values):
            arrows.append((rt + i, rs + v))
            morphisms.append(base.identity(tgt_regs[i]))

    shape = DiagramShape(len(objects), tuple(arrows))
    return Deconstruction(shape, tuple(objects), tuple(morphisms), node_of)


def apply_functor(obj_map, mor_map, value):
    """Apply a base functor objectwise and morphismwise."""
    if isinstance(value, Zigzag):
        return Zigzag(
            tuple(obj_map(r) for r in value.regulars),
            tuple(obj_map(s) for s in value.singulars),
            tuple(mor_map(f) for f in value.forwards),
            tuple(mor_map(b) for b in value.backwards),
        )
    if isinstance(value, ZigzagMap):
        return ZigzagMap(
            apply_functor(obj_map, mor_map, value.source),
            apply_functor(obj_map, mor_map, value.target),
            value.sing_map,
            tuple(mor_map(g) for g in value.slices),
        )
    raise TypeError(f"cannot apply functor to {type(value).__name__}")
