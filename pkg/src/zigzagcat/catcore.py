"""Diagram shapes, the base-category interface, and concrete poset bases.

A "base category" is the thing a zigzag is drawn in.  The recursion of the
engine bottoms out here: at the poset of labels (typed diagrams) or at the
terminal category (untyped diagrams).  Everything is immutable and pure.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import EmptyShape, NoColimit, NotConnected


@dataclass(frozen=True)
class DiagramShape:
    """A finite shape: nodes 0..num_nodes-1 and a list of (src, tgt) arrows.

    Parallel arrows are allowed; an arrow's id is its index in ``arrows``.
    """

    num_nodes: int
    arrows: tuple = ()

    def __post_init__(self):
        for s, t in self.arrows:
            if not (0 <= s < self.num_nodes and 0 <= t < self.num_nodes):
                raise ValueError(f"arrow ({s},{t}) out of range")

    def __hash__(self):
        # computed lazily and cached; shapes are hot dictionary keys
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.num_nodes, self.arrows))
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        if not isinstance(other, DiagramShape):
            return NotImplemented
        return self.num_nodes == other.num_nodes and self.arrows == other.arrows

    @property
    def nodes(self):
        return range(self.num_nodes)


@lru_cache(maxsize=None)
def is_connected(shape: DiagramShape) -> bool:
    """True iff the underlying undirected graph is connected and non-empty."""
    if shape.num_nodes == 0:
        return False
    adj = {j: set() for j in shape.nodes}
    for s, t in shape.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen = {0}
    stack = [0]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == shape.num_nodes


def check_connected(shape: DiagramShape):
    if shape.num_nodes == 0:
        raise EmptyShape("diagram shape has no nodes")
    if not is_connected(shape):
        raise NotConnected("diagram shape is not connected")


@dataclass(frozen=True)
class Cocone:
    """Apex plus one leg morphism per shape node."""

    apex: object
    legs: tuple  # leg morphism for node j at index j


class BaseCategory(ABC):
    """Capability contract for categories zigzags can live over.

    Morphism composition is written in diagram order: ``compose(f, g)``
    is "f then g".
    """

    @abstractmethod
    def identity(self, obj):
        ...

    @abstractmethod
    def source(self, mor):
        ...

    @abstractmethod
    def target(self, mor):
        ...

    @abstractmethod
    def compose(self, f, g):
        ...

    def terminal(self):
        """The terminal object, or None if the category lacks one."""
        return None

    def to_terminal(self, obj):
        raise NoColimit("NoUpperBound", "no terminal object")

    @abstractmethod
    def connected_colimit(self, shape: DiagramShape, objects, arrows, bias=None) -> Cocone:
        """Colimit of a connected diagram; raises NoColimit on failure.

        ``objects`` maps node -> object, ``arrows`` maps arrow id -> morphism.
        ``bias`` is threaded through for bases that support symmetry breaking
        (the zigzag adapter); poset bases ignore it.
        """
        ...


@dataclass(frozen=True)
class PosetMor:
    """A morphism in a poset: pure witness that src <= tgt, no data."""

    src: object
    tgt: object

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PosetMor):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt

    def __hash__(self):
        return hash((self.src, self.tgt))


class PosetBase(BaseCategory):
    """Shared machinery for property-only (poset) bases.

    Morphisms are interned per base: equal witnesses are the same object,
    which keeps the hot equality checks on the identity fast path.
    """

    def le(self, a, b) -> bool:
        raise NotImplementedError

    def _mor(self, src, tgt):
        memo = self.__dict__.setdefault("_mor_memo", {})
        mor = memo.get((src, tgt))
        if mor is None:
            mor = memo[(src, tgt)] = PosetMor(src, tgt)
        return mor

    def identity(self, obj):
        return self._mor(obj, obj)

    def source(self, mor):
        return mor.src

    def target(self, mor):
        return mor.tgt

    def compose(self, f, g):
        if f.tgt != g.src:
            raise ValueError(f"cannot compose {f} with {g}")
        return self._mor(f.src, g.tgt)

    def hom(self, a, b):
        return self._mor(a, b) if self.le(a, b) else None


class TerminalCategory(PosetBase):
    """One object, one morphism."""

    STAR = "*"

    def le(self, a, b):
        return a == self.STAR and b == self.STAR

    def terminal(self):
        return self.STAR

    def to_terminal(self, obj):
        return PosetMor(obj, self.STAR)

    def connected_colimit(self, shape, objects, arrows, bias=None):
        check_connected(shape)
        return Cocone(self.STAR, tuple(PosetMor(self.STAR, self.STAR) for _ in shape.nodes))


@dataclass(frozen=True)
class Label:
    """A signature entry: a generating cell of some dimension."""

    id: str
    dimension: int
    name: str = ""
    color: str = ""


@dataclass(frozen=True)
class LabelSignature:
    labels: tuple = ()

    def __post_init__(self):
        ids = [l.id for l in self.labels]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate label ids")
        for l in self.labels:
            if l.dimension < 0:
                raise ValueError(f"label {l.id} has negative dimension")

    def by_id(self, label_id: str) -> Label:
        for l in self.labels:
            if l.id == label_id:
                return l
        raise KeyError(label_id)

    def dim(self, label_id: str) -> int:
        return self.by_id(label_id).dimension

    def has(self, label_id: str) -> bool:
        return any(l.id == label_id for l in self.labels)

    def add(self, label: Label) -> "LabelSignature":
        return LabelSignature(self.labels + (label,))


class LabelPoset(PosetBase):
    """The poset of labels: l -> l' iff l = l' or dim(l) < dim(l').

    Colimits are taken locally, over the labels that actually occur in the
    diagram: the unique occurring label of maximal dimension, if there is one.
    """

    def __init__(self, signature: LabelSignature):
        self.signature = signature

    def le(self, a, b):
        return a == b or self.signature.dim(a) < self.signature.dim(b)

    def connected_colimit(self, shape, objects, arrows, bias=None):
        check_connected(shape)
        occurring = [objects[j] for j in shape.nodes]
        top = label_colimit(self.signature, occurring)
        return Cocone(top, tuple(self._mor(l, top) for l in occurring))


def label_colimit(signature: LabelSignature, labels) -> str:
    """Join of the occurring labels, computed within the occurring set.

    Succeeds iff exactly one distinct label has the maximal dimension.
    """
    labels = list(labels)
    if not labels:
        raise EmptyShape("no labels")
    max_dim = max(signature.dim(l) for l in labels)
    tops = {l for l in labels if signature.dim(l) == max_dim}
    if len(tops) != 1:
        raise NoColimit("TiedMaxima", f"maximal labels {sorted(tops)}")
    return tops.pop()


class FinPoset(PosetBase):
    """A finite poset given by its elements and order pairs; test workhorse.

    Colimits are genuine least upper bounds in the whole poset.
    """

    def __init__(self, elements, le_pairs):
        self.elements = tuple(elements)
        rel = {(x, x) for x in self.elements} | set(le_pairs)
        # transitive closure, so callers can give covering pairs only
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValueError(f"not antisymmetric: {a}, {b}")
        self._rel = frozenset(rel)
        self._up = {
            x: frozenset(u for u in self.elements if (x, u) in rel)
            for x in self.elements
        }

    def le(self, a, b):
        return (a, b) in self._rel

    def terminal(self):
        tops = [t for t in self.elements if all(self.le(x, t) for x in self.elements)]
        return tops[0] if tops else None

    def to_terminal(self, obj):
        top = self.terminal()
        if top is None:
            raise NoColimit("NoUpperBound", "poset has no top element")
        return PosetMor(obj, top)

    def lub(self, xs):
        xs = list(xs)
        if not xs:
            ubs = frozenset(self.elements)
        else:
            ubs = self._up[xs[0]]
            for x in xs[1:]:
                ubs &= self._up[x]
        for u in ubs:
            if ubs <= self._up[u]:
                return u
        return None

    def connected_colimit(self, shape, objects, arrows, bias=None):
        check_connected(shape)
        occurring = [objects[j] for j in shape.nodes]
        top = self.lub(occurring)
        if top is None:
            raise NoColimit("NoUpperBound", f"no least upper bound of {occurring}")
        return Cocone(top, tuple(self._mor(l, top) for l in occurring))


def poset_colimit_oracle(poset: FinPoset, shape: DiagramShape, objects):
    """Exhaustive least-upper-bound search; None when no colimit exists."""
    occurring = [objects[j] for j in shape.nodes]
    for cand in poset.elements:
        if not all(poset.le(x, cand) for x in occurring):
            continue
        others = [u for u in poset.elements if all(poset.le(x, u) for x in occurring)]
        if all(poset.le(cand, u) for u in others):
            return cand
    return None


def verify_universal(shape, cocone_enumerator, mediator_enumerator, cocone) -> bool:
    """Bounded universal-property check.

    ``cocone_enumerator()`` yields every cocone in the finite test universe;
    ``mediator_enumerator(cocone, other)`` yields candidate mediating
    morphisms (already filtered to commute with both sets of legs).  A True
    verdict certifies universality only relative to the enumerated universe.
    """
    for other in cocone_enumerator():
        mediators = list(mediator_enumerator(cocone, other))
        if len(mediators) != 1:
            return False
    return True


def associativity_unit_laws(base: BaseCategory, objects, morphisms) -> list:
    """Check composition laws on an enumerated fragment; returns violations."""
    bad = []
    for f in morphisms:
        a, b = base.source(f), base.target(f)
        if base.compose(base.identity(a), f) != f:
            bad.append(("left-unit", f))
        if base.compose(f, base.identity(b)) != f:
            bad.append(("right-unit", f))
    for f, g, h in product(morphisms, repeat=3):
        if base.target(f) != base.source(g) or base.target(g) != base.source(h):
            continue
        if base.compose(base.compose(f, g), h) != base.compose(f, base.compose(g, h)):
            bad.append(("associativity", (f, g, h)))
    return bad
