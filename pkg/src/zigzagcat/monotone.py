"""Monotone maps between finite total orders, their reversal duality, and
colimits of connected diagrams of finite total orders.

The object [n] is the total order {0, ..., n-1}.  Reversal swaps the roles of
"gaps" and "elements": a map [n] -> [m] corresponds contravariantly to an
endpoint-preserving map [m+1] -> [n+1].
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations

from .catcore import DiagramShape, check_connected
from .errors import BiasRequired, IndexOutOfRange, NoColimit, SizeMismatch


@dataclass(frozen=True)
class Monotone:
    """An order-preserving map [source_size] -> [target_size]."""

    source_size: int
    target_size: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.source_size:
            raise ValueError("values length disagrees with source_size")
        if self.source_size and not all(
            0 <= v < self.target_size for v in self.values
        ):
            raise ValueError(f"values {self.values} out of range [{self.target_size}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values {self.values} not nondecreasing")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __eq__(self, other):
        if not isinstance(other, Monotone):
            return NotImplemented
        return (
            self.source_size == other.source_size
            and self.target_size == other.target_size
            and self.values == other.values
        )

    def __hash__(self):
        # cached: monotones are hot dictionary keys in the colimit machinery
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source_size, self.target_size, self.values))
            object.__setattr__(self, "_hash", h)
        return h

    @staticmethod
    def identity(n: int) -> "Monotone":
        return Monotone(n, n, tuple(range(n)))

    @staticmethod
    def constant(n: int, m: int, value: int) -> "Monotone":
        return Monotone(n, m, (value,) * n)

    def is_identity(self) -> bool:
        return self.source_size == self.target_size and self.values == tuple(
            range(self.source_size)
        )


class RegularMonotone(Monotone):
    """A monotone map that preserves the first and last elements.

    Source and target must both be non-empty.
    """

    def __post_init__(self):
        super().__post_init__()
        if self.source_size < 1 or self.target_size < 1:
            raise ValueError("endpoint-preserving maps need non-empty orders")
        if self.values[0] != 0 or self.values[-1] != self.target_size - 1:
            raise ValueError(f"values {self.values} do not preserve endpoints")

    @staticmethod
    def identity(n: int) -> "RegularMonotone":
        return RegularMonotone(n, n, tuple(range(n)))


def _trusted_monotone(n: int, m: int, values: tuple) -> Monotone:
    """Construct a Monotone from values known valid, skipping validation.

    Internal: only for algorithm outputs whose monotonicity is guaranteed
    by construction; callers with untrusted data must use Monotone itself.
    """
    f = object.__new__(Monotone)
    f.__dict__.update(source_size=n, target_size=m, values=values)
    return f


def compose(f: Monotone, g: Monotone) -> Monotone:
    """Diagram-order composition: first f, then g."""
    if f.target_size != g.source_size:
        raise SizeMismatch(
            f"cannot compose [{f.source_size}]->[{f.target_size}] "
            f"with [{g.source_size}]->[{g.target_size}]"
        )
    values = tuple(map(g.values.__getitem__, f.values))
    if isinstance(f, RegularMonotone) and isinstance(g, RegularMonotone):
        return RegularMonotone(f.source_size, g.target_size, values)
    return Monotone(f.source_size, g.target_size, values)


def top_extend(f: Monotone) -> Monotone:
    """Extend [n]->[m] to [n+1]->[m+1] by sending the new top to the new top."""
    return Monotone(
        f.source_size + 1, f.target_size + 1, f.values + (f.target_size,)
    )


def above_set(f: Monotone, j: int) -> frozenset:
    """The set of source elements whose image is at least j."""
    if not 0 <= j < f.target_size:
        raise IndexOutOfRange(f"height {j} not in [{f.target_size}]")
    return frozenset(i for i in range(f.source_size) if f(i) >= j)


@lru_cache(maxsize=None)
def reversal(f: Monotone) -> RegularMonotone:
    """The endpoint-preserving dual [m+1] -> [n+1] of f: [n] -> [m].

    result(j) counts the source elements mapped strictly below j, which is
    also the least i with top_extend(f)(i) >= j.  Cached: the map is pure
    and the same monotones recur throughout nested computations.
    """
    n, m = f.source_size, f.target_size
    values = tuple(bisect_left(f.values, j) for j in range(m + 1))
    return RegularMonotone(m + 1, n + 1, values)


def reversal_inverse(g: RegularMonotone) -> Monotone:
    """Inverse of reversal: recover [n] -> [m] from its dual [m+1] -> [n+1]."""
    m = g.source_size - 1
    n = g.target_size - 1
    values = tuple(
        sum(1 for j in range(1, m + 1) if g(j) <= i) for i in range(n)
    )
    return Monotone(n, m, values)


class Bias(Enum):
    NONE = "none"
    LOWER = "lower"
    HIGHER = "higher"


@dataclass(frozen=True)
class DeltaDiagram:
    """A diagram of finite total orders: node j carries the order [sizes[j]],
    arrow a carries a monotone map matching its endpoints' sizes."""

    shape: DiagramShape
    sizes: tuple
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.sizes) != self.shape.num_nodes:
            raise ValueError("one size per node required")
        if len(self.maps) != len(self.shape.arrows):
            raise ValueError("one map per arrow required")
        for (s, t), f in zip(self.shape.arrows, self.maps):
            if f.source_size != self.sizes[s] or f.target_size != self.sizes[t]:
                raise ValueError(f"map {f} does not fit arrow ({s},{t})")


@dataclass(frozen=True)
class DeltaCocone:
    size: int
    legs: tuple  # one Monotone per node, into [size]

    def commutes(self, d: DeltaDiagram) -> bool:
        return all(
            compose(f, self.legs[t]) == self.legs[s]
            for (s, t), f in zip(d.shape.arrows, d.maps)
        )


def _element_classes(d: DeltaDiagram):
    """Union-find quotient of the disjoint union of all node elements by the
    graphs of the arrow maps.  Returns (elements, find) where elements lists
    the (node, index) pairs and find maps each pair to its class root."""
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def unify(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    elements = [
        (j, i) for j in d.shape.nodes for i in range(d.sizes[j])
    ]
    for e in elements:
        parent[e] = e
    for (s, t), f in zip(d.shape.arrows, d.maps):
        for i in range(f.source_size):
            unify((s, i), (t, f(i)))
    return elements, find


def delta_colimit(d: DeltaDiagram) -> DeltaCocone:
    """Colimit of a connected diagram of finite total orders.

    Quotients the elements by the arrow graphs and induces a precedence
    relation from within-node successor pairs.  Classes on a precedence
    cycle are forced equal by every cocone into a total order, so they
    collapse.  The colimit exists iff the collapsed relation is a strict
    total order; otherwise two classes are genuinely incomparable and two
    opposing linearizations defeat universality.
    """
    check_connected(d.shape)
    # flat union-find over all elements, joined along the arrow graphs
    offsets = []
    total = 0
    for j in d.shape.nodes:
        offsets.append(total)
        total += d.sizes[j]
    parent = list(range(total))
    for (s, t), f in zip(d.shape.arrows, d.maps):
        off_s, off_t, values = offsets[s], offsets[t], f.values
        for i in range(f.source_size):
            x = off_s + i
            while parent[x] != x:
                x = parent[x]
            y = off_t + values[i]
            while parent[y] != y:
                y = parent[y]
            if x != y:
                parent[x] = y

    index = {}
    cls = [0] * total
    for x in range(total):
        r = x
        while parent[r] != r:
            r = parent[r]
        parent[x] = r
        if r not in index:
            index[r] = len(index)
        cls[x] = index[r]
    n = len(index)

    # successor pairs within each node induce precedence on classes;
    # reach[a] is the bitmask of classes reachable from a (transitive closure)
    reach = [0] * n
    for j in d.shape.nodes:
        off = offsets[j]
        for i in range(d.sizes[j] - 1):
            a, b = cls[off + i], cls[off + i + 1]
            if a != b:
                reach[a] |= 1 << b
    for k in range(n):
        rk, bit = reach[k], 1 << k
        for a in range(n):
            if reach[a] & bit:
                reach[a] |= rk

    # collapse mutually-reachable classes (an equivalence, reach being closed)
    reach_into = [0] * n  # reach_into[a]: classes from which a is reachable
    for a in range(n):
        m, b = reach[a], 0
        while m:
            low = m & -m
            reach_into[low.bit_length() - 1] |= 1 << a
            m ^= low
    group = [
        a if not (mutual := reach[a] & reach_into[a]) else min(
            a, (mutual & -mutual).bit_length() - 1
        )
        for a in range(n)
    ]
    supers = sorted(set(group))
    for a, b in combinations(supers, 2):
        if not (reach[a] >> b) & 1 and not (reach[b] >> a) & 1:
            raise NoColimit("Incomparable", f"classes {a} and {b} unrelated")

    supers_mask = 0
    for s in supers:
        supers_mask |= 1 << s
    size = len(supers)
    posmap = [0] * n
    for s in supers:
        posmap[s] = size - 1 - bin(reach[s] & supers_mask & ~reach_into[s]).count("1")
    for a in range(n):
        g = group[a]
        if g != a:
            posmap[a] = posmap[g]
    legs = []
    off = 0
    for j in d.shape.nodes:
        nxt = off + d.sizes[j]
        legs.append(
            _trusted_monotone(
                d.sizes[j], size, tuple(map(posmap.__getitem__, cls[off:nxt]))
            )
        )
        off = nxt
    return DeltaCocone(size, tuple(legs))


def biased_cocone(d: DeltaDiagram, bias: Bias = Bias.NONE) -> DeltaCocone:
    """A deterministic cocone for d: the colimit when it exists, otherwise a
    symmetry-broken linearization of the class preorder.

    Strongly-connected components of the precedence relation are condensed,
    then topologically sorted; among simultaneously-ready components the bias
    picks the one with the least (Lower) or greatest (Higher) minimal
    (node, element) key.
    """
    check_connected(d.shape)
    try:
        return delta_colimit(d)
    except NoColimit:
        pass
    if bias is Bias.NONE:
        raise BiasRequired("diagram has no colimit; a bias is required")

    elements, find = _element_classes(d)
    roots = sorted({find(e) for e in elements})
    index = {r: k for k, r in enumerate(roots)}
    cls = {e: index[find(e)] for e in elements}
    n = len(roots)
    succ = [set() for _ in range(n)]
    for j in d.shape.nodes:
        for i in range(d.sizes[j] - 1):
            a, b = cls[(j, i)], cls[(j, i + 1)]
            if a != b:
                succ[a].add(b)

    # condense strongly-connected components (Tarjan, iterative)
    comp = [-1] * n
    low = [0] * n
    num = [0] * n
    on_stack = [False] * n
    stack, counter, ncomp = [], 0, 0
    visited = [False] * n
    for start in range(n):
        if visited[start]:
            continue
        work = [(start, iter(sorted(succ[start])))]
        visited[start] = True
        num[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    num[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(succ[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], num[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == num[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1

    comp_succ = [set() for _ in range(ncomp)]
    indeg = [0] * ncomp
    for a in range(n):
        for b in succ[a]:
            if comp[a] != comp[b] and comp[b] not in comp_succ[comp[a]]:
                comp_succ[comp[a]].add(comp[b])
                indeg[comp[b]] += 1

    key = {}
    for e in sorted(elements):
        c = comp[cls[e]]
        if c not in key:
            key[c] = e

    ready = [c for c in range(ncomp) if indeg[c] == 0]
    order = []
    while ready:
        if bias is Bias.LOWER:
            nxt = min(ready, key=lambda c: key[c])
        else:
            nxt = max(ready, key=lambda c: key[c])
        ready.remove(nxt)
        order.append(nxt)
        for b in comp_succ[nxt]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)

    position = {c: k for k, c in enumerate(order)}
    legs = tuple(
        Monotone(
            d.sizes[j],
            ncomp,
            tuple(position[comp[cls[(j, i)]]] for i in range(d.sizes[j])),
        )
        for j in d.shape.nodes
    )
    return DeltaCocone(ncomp, legs)
