"""Independent brute-force oracles used to validate the colimit algorithms.

These deliberately avoid the production code paths: the total-order colimit
oracle works by separating elements with two-valued cocones, and universality
is certified by exhaustive cocone enumeration within a stated bound.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product

from .monotone import DeltaCocone, DeltaDiagram, Monotone, compose


def enumerate_monotones(n: int, m: int):
    """All monotone maps [n] -> [m]."""
    if n == 0:
        yield Monotone(0, m, ())
        return
    if m == 0:
        return
    for values in combinations_with_replacement(range(m), n):
        yield Monotone(n, m, values)


def _two_valued_cocones(d: DeltaDiagram):
    """All cocones of d with apex [2].

    A leg into [2] is a threshold: elements below the cut go to 0, the rest
    to 1.  Cuts are chosen per node and filtered by commutation with every
    arrow.
    """
    cuts = product(*(range(s + 1) for s in d.sizes))
    for cut in cuts:
        legs = tuple(
            Monotone(s, 2, tuple(0 if i < c else 1 for i in range(s)))
            for s, c in zip(d.sizes, cut)
        )
        cocone = DeltaCocone(2, legs)
        if cocone.commutes(d):
            yield cocone


def delta_colimit_oracle(d: DeltaDiagram):
    """Colimit of a connected diagram of total orders, or None.

    Any colimit must identify exactly the element pairs that no cocone
    separates, and must order classes the way no cocone inverts.  Both facts
    are detectable with apex [2] alone, because an arbitrary separating or
    inverting cocone composes with a threshold map down to a two-valued one.
    The forced candidate is built from those constraints and then checked to
    be a well-defined total-order quotient; it is the colimit iff the check
    passes, since its own legs would otherwise fail to be monotone or to
    admit unique mediators.
    """
    elements = [(j, i) for j in d.shape.nodes for i in range(d.sizes[j])]
    cocones = list(_two_valued_cocones(d))

    def separated(x, y):
        return any(c.legs[x[0]](x[1]) != c.legs[y[0]](y[1]) for c in cocones)

    classes = []
    rep = {}
    for e in elements:
        for k, members in enumerate(classes):
            if not separated(e, members[0]):
                members.append(e)
                rep[e] = k
                break
        else:
            rep[e] = len(classes)
            classes.append([e])

    # strictly-before relation on classes: x before y iff some cocone puts
    # x lower and none puts x higher
    def value_pairs(x, y):
        return [(c.legs[x[0]](x[1]), c.legs[y[0]](y[1])) for c in cocones]

    n = len(classes)
    before = [[False] * n for _ in range(n)]
    for a, b in combinations_with_replacement(range(n), 2):
        if a == b:
            continue
        pairs = value_pairs(classes[a][0], classes[b][0])
        a_low = any(x < y for x, y in pairs)
        b_low = any(y < x for x, y in pairs)
        if a_low and not b_low:
            before[a][b] = True
        elif b_low and not a_low:
            before[b][a] = True
        else:
            return None  # tied or jointly inverted: no linear quotient

    # the candidate must be a strict total order
    order = sorted(range(n), key=lambda a: sum(before[a]), reverse=True)
    for k, a in enumerate(order):
        if sum(before[a]) != n - 1 - k:
            return None
    position = {c: k for k, c in enumerate(order)}
    legs = []
    for j in d.shape.nodes:
        values = tuple(position[rep[(j, i)]] for i in range(d.sizes[j]))
        if any(p > q for p, q in zip(values, values[1:])):
            return None
        legs.append(Monotone(d.sizes[j], n, values))
    cocone = DeltaCocone(n, tuple(legs))
    if not cocone.commutes(d):
        return None
    return cocone


def delta_mediators(d: DeltaDiagram, cocone: DeltaCocone, other: DeltaCocone):
    """All monotone maps from cocone's apex to other's commuting with legs."""
    for h in enumerate_monotones(cocone.size, other.size):
        if all(
            compose(cocone.legs[j], h) == other.legs[j] for j in d.shape.nodes
        ):
            yield h


def enumerate_delta_cocones(d: DeltaDiagram, max_apex: int):
    """All cocones of d with apex size up to max_apex."""
    for size in range(max_apex + 1):
        for legs in product(
            *(list(enumerate_monotones(s, size)) for s in d.sizes)
        ):
            cocone = DeltaCocone(size, legs)
            if cocone.commutes(d):
                yield cocone


def delta_verify_universal(d: DeltaDiagram, cocone: DeltaCocone, max_apex: int) -> bool:
    """True iff cocone has a unique mediator to every cocone of apex size
    up to max_apex.  Bounded-complete: certifies universality only within
    the enumerated universe."""
    for other in enumerate_delta_cocones(d, max_apex):
        if sum(1 for _ in delta_mediators(d, cocone, other)) != 1:
            return False
    return True
