"""Generalized contraction and expansion of typed diagrams.

A generalized contraction is a zigzag map D -> C, a generalized expansion a
zigzag map E -> D.  Both are triggered at a level addressed by a path of
slice coordinates; the base move happens there and is then propagated to
the top level step by step: through a singular coordinate by promotion
(contraction) or factorization-with-bubble-fallback (expansion), through a
regular coordinate by bubbling (contraction) or not at all (expansion).
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import BaseCategory, LabelSignature, PosetBase, PosetMor
from .colimit import ZigzagBase, contract_zigzag
from .diagram import (
    Diagram,
    REGULAR,
    SINGULAR,
    base_for,
    slice_diagram,
    validate_dimensions,
)
from .errors import (
    DimensionViolation,
    ExpansionUnsupported,
    PathOutOfRange,
    RegularPropagationImpossible,
    ValidationFailed,
)
from .monotone import Bias, Monotone
from .zigzag import Zigzag, ZigzagMap, compose_maps, validate_map


@dataclass(frozen=True)
class ContractionDirective:
    path: tuple  # slice coordinates addressing the level to contract
    window: tuple  # (a, b) regular heights at that level
    bias: Bias = Bias.NONE

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(self.path))
        object.__setattr__(self, "window", tuple(self.window))


@dataclass(frozen=True)
class ExpansionDirective:
    path: tuple  # slice coordinates addressing the level to expand
    height: int  # singular height at that level to split in two
    split: tuple  # two disjoint covering groups of inner singular heights
    direction: Bias = Bias.LOWER  # LOWER: first group first, HIGHER: second

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(self.path))
        object.__setattr__(
            self, "split", tuple(tuple(g) for g in self.split)
        )


def promote_singular(base: BaseCategory, z: Zigzag, i: int, c) -> ZigzagMap:
    """Promote a morphism c out of singular height i to a map of zigzags.

    The target replaces s_i by the target of c and composes both cospan
    maps at that height with c; everything else is untouched.
    """
    target = Zigzag(
        z.regulars,
        z.singulars[:i] + (base.target(c),) + z.singulars[i + 1 :],
        z.forwards[:i] + (base.compose(z.forwards[i], c),) + z.forwards[i + 1 :],
        z.backwards[:i]
        + (base.compose(z.backwards[i], c),)
        + z.backwards[i + 1 :],
    )
    slices = tuple(
        c if j == i else base.identity(z.singulars[j]) for j in range(z.length)
    )
    return ZigzagMap(z, target, Monotone.identity(z.length), slices)


def bubble_regular(base: BaseCategory, z: Zigzag, j: int, c) -> ZigzagMap:
    """Promote a morphism c out of regular height j by inserting its target
    as a new singular height between two copies of r_j."""
    target = Zigzag(
        z.regulars[: j + 1] + (z.regulars[j],) + z.regulars[j + 1 :],
        z.singulars[:j] + (base.target(c),) + z.singulars[j:],
        z.forwards[:j] + (c,) + z.forwards[j:],
        z.backwards[:j] + (c,) + z.backwards[j:],
    )
    sing = Monotone(
        z.length,
        z.length + 1,
        tuple(i if i < j else i + 1 for i in range(z.length)),
    )
    slices = tuple(base.identity(s) for s in z.singulars)
    return ZigzagMap(z, target, sing, slices)


def contract_at(
    signature: LabelSignature,
    d: Diagram,
    directive: ContractionDirective,
    permissive: bool = False,
):
    """Contract the window at the addressed level and propagate the result
    to the top, returning (contracted diagram, map d -> result)."""
    sub = slice_diagram(d, directive.path)
    if sub.dimension < 1:
        raise PathOutOfRange("contraction needs a level of dimension >= 1")
    a, b = directive.window
    base = base_for(signature, sub.dimension)
    _, m = contract_zigzag(base, sub.payload, a, b, directive.bias)

    for idx in range(len(directive.path) - 1, -1, -1):
        parent = slice_diagram(d, directive.path[:idx]).payload
        parent_base = base_for(signature, d.dimension - idx)
        kind, i = directive.path[idx]
        if kind == SINGULAR:
            m = promote_singular(parent_base, parent, i, m)
        else:
            m = bubble_regular(parent_base, parent, i, m)

    return _finish(signature, d, m, permissive)


def _finish(signature, d, m, permissive):
    top = base_for(signature, d.dimension)
    bad = validate_map(top, m)
    if bad:
        raise ValidationFailed(bad)
    result = Diagram(d.dimension, m.target)
    dim_bad = validate_dimensions(signature, result)
    if dim_bad and not permissive:
        raise DimensionViolation(dim_bad)
    return result, m


def _singleton_preimage(sing: Monotone, t: int):
    pre = [p for p in range(sing.source_size) if sing(p) == t]
    if len(pre) != 1:
        raise ExpansionUnsupported(
            f"height {t} needs exactly one preimage, found {len(pre)}"
        )
    return pre[0]


def expand_zigzag(base: ZigzagBase, z: Zigzag, i: int, group: tuple):
    """Split singular height i of z in two, with the inner singular heights
    in ``group`` occurring at the lower of the two new heights.

    Returns (expanded zigzag, map into z).  The unselected inner heights of
    the lower slice are backfilled from r_i through the forward map, the
    selected inner heights of the upper slice from r_{i+1} through the
    backward map; both substitutions need singleton preimages.
    """
    if not isinstance(base, ZigzagBase):
        raise ExpansionUnsupported("the addressed singular has no inner heights")
    if not 0 <= i < z.length:
        raise PathOutOfRange(f"no singular height {i}")
    s, f, bk = z.singulars[i], z.forwards[i], z.backwards[i]
    r_lo, r_hi = z.regulars[i], z.regulars[i + 1]
    n = s.length
    group = tuple(sorted(set(group)))
    rest = tuple(t for t in range(n) if t not in group)
    if not group or not rest or not all(0 <= t < n for t in group):
        raise ExpansionUnsupported(
            "the split needs two nonempty groups covering the inner heights"
        )
    inner = base.base
    lo_of = {t: _singleton_preimage(f.sing_map, t) for t in rest}
    hi_of = {t: _singleton_preimage(bk.sing_map, t) for t in group}

    def build(pick_obj, pick_forward, pick_backward):
        return Zigzag(
            s.regulars,
            tuple(pick_obj(t) for t in range(n)),
            tuple(pick_forward(t) for t in range(n)),
            tuple(pick_backward(t) for t in range(n)),
        )

    def from_s(t):
        return s.singulars[t], s.forwards[t], s.backwards[t]

    def from_lo(t):
        p = lo_of[t]
        return r_lo.singulars[p], r_lo.forwards[p], r_lo.backwards[p]

    def from_hi(t):
        q = hi_of[t]
        return r_hi.singulars[q], r_hi.forwards[q], r_hi.backwards[q]

    def mix(in_group, otherwise):
        chosen = lambda t: in_group(t) if t in group else otherwise(t)
        return build(
            lambda t: chosen(t)[0], lambda t: chosen(t)[1], lambda t: chosen(t)[2]
        )

    s_lo = mix(from_s, from_lo)
    r_mid = mix(from_hi, from_lo)
    s_hi = mix(from_hi, from_s)

    ident = Monotone.identity(n)
    f_lo = ZigzagMap(
        r_lo,
        s_lo,
        f.sing_map,
        tuple(
            f.slices[p] if f.sing_map(p) in group else inner.identity(r_lo.singulars[p])
            for p in range(r_lo.length)
        ),
    )
    b_lo = ZigzagMap(
        r_mid,
        s_lo,
        ident,
        tuple(
            bk.slices[hi_of[t]] if t in group else inner.identity(r_lo.singulars[lo_of[t]])
            for t in range(n)
        ),
    )
    f_hi = ZigzagMap(
        r_mid,
        s_hi,
        ident,
        tuple(
            inner.identity(r_hi.singulars[hi_of[t]]) if t in group else f.slices[lo_of[t]]
            for t in range(n)
        ),
    )
    b_hi = ZigzagMap(
        r_hi,
        s_hi,
        bk.sing_map,
        tuple(
            inner.identity(r_hi.singulars[q]) if bk.sing_map(q) in group else bk.slices[q]
            for q in range(r_hi.length)
        ),
    )
    e_lo = ZigzagMap(
        s_lo,
        s,
        ident,
        tuple(
            inner.identity(s.singulars[t]) if t in group else f.slices[lo_of[t]]
            for t in range(n)
        ),
    )
    e_hi = ZigzagMap(
        s_hi,
        s,
        ident,
        tuple(
            bk.slices[hi_of[t]] if t in group else inner.identity(s.singulars[t])
            for t in range(n)
        ),
    )

    expanded = Zigzag(
        z.regulars[: i + 1] + (r_mid,) + z.regulars[i + 1 :],
        z.singulars[:i] + (s_lo, s_hi) + z.singulars[i + 1 :],
        z.forwards[:i] + (f_lo, f_hi) + z.forwards[i + 1 :],
        z.backwards[:i] + (b_lo, b_hi) + z.backwards[i + 1 :],
    )
    sing = Monotone(
        z.length + 1,
        z.length,
        tuple(t if t <= i else t - 1 for t in range(z.length + 1)),
    )
    slices = tuple(
        e_lo if t == i else e_hi if t == i + 1 else base.identity(expanded.singulars[t])
        for t in range(z.length + 1)
    )
    e = ZigzagMap(expanded, z, sing, slices)
    bad = validate_map(base, e)
    if bad:
        raise ExpansionUnsupported(
            "the split does not assemble into a valid perturbation: "
            + "; ".join(str(v) for v in bad)
        )
    return expanded, e


def factor_through(base: BaseCategory, f, e):
    """A morphism m with compose(m, e) == f, or None.

    The monotone part is solved greedily: each height takes the lowest
    admissible value whose slice morphism also factorizes; slice
    factorizations recurse down to poset morphisms, which are unique when
    they exist.
    """
    if isinstance(f, ZigzagMap):
        inner = base.base
        values = []
        slices = []
        floor = 0
        for p in range(f.sing_map.source_size):
            found = None
            for t in range(floor, e.sing_map.source_size):
                if e.sing_map(t) != f.sing_map(p):
                    continue
                g = factor_through(inner, f.slices[p], e.slices[t])
                if g is not None:
                    found = (t, g)
                    break
            if found is None:
                return None
            floor = found[0]
            values.append(found[0])
            slices.append(found[1])
        sing = Monotone(f.sing_map.source_size, e.sing_map.source_size, tuple(values))
        candidate = ZigzagMap(f.source, e.source, sing, tuple(slices))
        if validate_map(inner, candidate):
            return None
        if compose_maps(inner, candidate, e) != f:
            return None
        return candidate
    if isinstance(f, PosetMor) and isinstance(base, PosetBase):
        return PosetMor(f.src, e.src) if base.le(f.src, e.src) else None
    return None


def expand_at(
    signature: LabelSignature,
    d: Diagram,
    directive: ExpansionDirective,
    permissive: bool = False,
):
    """Expand the addressed singular height into two and propagate to the
    top, returning (expanded diagram, map result -> d)."""
    for kind, _ in directive.path:
        if kind == REGULAR:
            raise RegularPropagationImpossible(
                "expansion cannot propagate through a regular coordinate"
            )
    sub = slice_diagram(d, directive.path)
    if sub.dimension < 2:
        raise ExpansionUnsupported(
            "expansion needs a level of dimension >= 2"
        )
    first, second = directive.split
    group = first if directive.direction is Bias.LOWER else second
    base = base_for(signature, sub.dimension)
    _, e = expand_zigzag(base, sub.payload, directive.height, group)

    for idx in range(len(directive.path) - 1, -1, -1):
        parent = slice_diagram(d, directive.path[:idx]).payload
        parent_base = base_for(signature, d.dimension - idx)
        _, i = directive.path[idx]
        f_i, b_i = parent.forwards[i], parent.backwards[i]
        f_new = factor_through(parent_base, f_i, e)
        b_new = factor_through(parent_base, b_i, e)
        if f_new is not None and b_new is not None:
            expanded = Zigzag(
                parent.regulars,
                parent.singulars[:i] + (e.source,) + parent.singulars[i + 1 :],
                parent.forwards[:i] + (f_new,) + parent.forwards[i + 1 :],
                parent.backwards[:i] + (b_new,) + parent.backwards[i + 1 :],
            )
            slices = tuple(
                e if j == i else parent_base.identity(parent.singulars[j])
                for j in range(parent.length)
            )
            e = ZigzagMap(expanded, parent, Monotone.identity(parent.length), slices)
        else:
            expanded = Zigzag(
                parent.regulars[: i + 1] + (e.source,) + parent.regulars[i + 1 :],
                parent.singulars[:i]
                + (parent.singulars[i], parent.singulars[i])
                + parent.singulars[i + 1 :],
                parent.forwards[:i] + (f_i, e) + parent.forwards[i + 1 :],
                parent.backwards[:i] + (e, b_i) + parent.backwards[i + 1 :],
            )
            sing = Monotone(
                parent.length + 1,
                parent.length,
                tuple(t if t <= i else t - 1 for t in range(parent.length + 1)),
            )
            slices = tuple(
                parent_base.identity(expanded.singulars[t])
                for t in range(parent.length + 1)
            )
            e = ZigzagMap(expanded, parent, sing, slices)

    top = base_for(signature, d.dimension)
    bad = validate_map(top, e)
    if bad:
        raise ValidationFailed(bad)
    result = Diagram(d.dimension, e.source)
    dim_bad = validate_dimensions(signature, result)
    if dim_bad and not permissive:
        raise DimensionViolation(dim_bad)
    return result, e


def verify_generalized(base: BaseCategory, m: ZigzagMap, kind: str, detail=None):
    """Shape checks on top of validate_map: a contraction's monotone part
    must be surjective, an expansion's must collapse exactly the declared
    adjacent pair of heights."""
    out = list(validate_map(base, m))
    hit = set(m.sing_map.values)
    if kind == "contraction":
        missed = [t for t in range(m.target.length) if t not in hit]
        if missed:
            out.append(("contraction", f"heights {missed} not reached"))
    elif kind == "expansion":
        lo, hi = detail
        expected = tuple(
            t if t <= lo else t - 1 for t in range(m.source.length)
        )
        if hi != lo + 1 or m.sing_map.values != expected:
            out.append(("expansion", f"does not collapse exactly {lo},{hi}"))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out
