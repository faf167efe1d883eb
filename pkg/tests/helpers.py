"""Shared fixtures: small base categories and zigzag builders."""

from hypothesis import strategies as st

from zigzagcat.catcore import (
    BaseCategory,
    Cocone,
    FinPoset,
    Label,
    LabelSignature,
    PosetMor,
    check_connected,
)
from zigzagcat.diagram import Diagram
from zigzagcat.errors import NoColimit
from zigzagcat.monotone import Monotone
from zigzagcat.workspace import Workspace
from zigzagcat.zigzag import Zigzag, ZigzagMap


def chain(n: int) -> FinPoset:
    return FinPoset(range(n), [(i, i + 1) for i in range(n - 1)])


DIAMOND = FinPoset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
ANTICHAIN = FinPoset("xy", [])


class MonoidBase(BaseCategory):
    """One object, morphisms are strings under concatenation.

    Gives genuinely distinct parallel morphisms, which poset bases cannot,
    so the square equations of zigzag maps become real constraints.
    """

    STAR = "*"

    def identity(self, obj):
        return ""

    def source(self, mor):
        return self.STAR

    def target(self, mor):
        return self.STAR

    def compose(self, f, g):
        return f + g

    def connected_colimit(self, shape, objects, arrows, bias=None):
        check_connected(shape)
        raise NoColimit("Incomparable", "free monoid has no nontrivial colimits")


def poset_zigzag(poset, spec) -> Zigzag:
    """Build a zigzag over a poset from alternating objects r0 s0 r1 s1 ... rn."""
    regulars = tuple(spec[0::2])
    singulars = tuple(spec[1::2])
    forwards = []
    backwards = []
    for i, s in enumerate(singulars):
        f = poset.hom(regulars[i], s)
        b = poset.hom(regulars[i + 1], s)
        assert f is not None and b is not None, f"objects not below {s}"
        forwards.append(f)
        backwards.append(b)
    return Zigzag(regulars, singulars, tuple(forwards), tuple(backwards))


def poset_map(poset, source: Zigzag, target: Zigzag, sing_values) -> ZigzagMap:
    """Zigzag map over a poset; slices are the forced poset morphisms."""
    sing = Monotone(source.length, target.length, tuple(sing_values))
    slices = []
    for i in range(source.length):
        g = poset.hom(source.singulars[i], target.singulars[sing(i)])
        assert g is not None, f"no morphism at height {i}"
        slices.append(g)
    return ZigzagMap(source, target, sing, slices)


def star_zigzag(n: int) -> Zigzag:
    """Untyped zigzag of length n over the terminal category."""
    star = "*"
    loop = PosetMor(star, star)
    return Zigzag((star,) * (n + 1), (star,) * n, (loop,) * n, (loop,) * n)


def star_map(sing: Monotone) -> ZigzagMap:
    loop = PosetMor("*", "*")
    return ZigzagMap(
        star_zigzag(sing.source_size),
        star_zigzag(sing.target_size),
        sing,
        (loop,) * sing.source_size,
    )


def small_monotones(max_n=5, max_m=5):
    return st.tuples(st.integers(0, max_n), st.integers(0, max_m)).flatmap(
        lambda nm: st.lists(
            st.integers(0, max(nm[1] - 1, 0)), min_size=nm[0], max_size=nm[0]
        ).map(lambda vs: Monotone(nm[0], nm[1], tuple(sorted(vs))))
        if nm[1] > 0
        else st.just(Monotone(0, 0, ()))
    )


def composable_monotone_pairs(max_size=5):
    def normalize(nmk):
        n, m, k = nmk
        if k == 0:
            m = 0
        if m == 0:
            n = 0
        return st.tuples(_monotone_between(n, m), _monotone_between(m, k))

    return st.tuples(
        st.integers(0, max_size), st.integers(0, max_size), st.integers(0, max_size)
    ).flatmap(normalize)


def _monotone_between(n, m):
    return st.lists(
        st.integers(0, max(m - 1, 0)), min_size=n, max_size=n
    ).map(lambda vs: Monotone(n, m, tuple(sorted(vs))))


# ---------------------------------------------------------------------------
# typed fixtures shared by the workspace, service, and acceptance tests

BEADS_SIG = LabelSignature(
    (
        Label("region", 0),
        Label("wire", 1, "Wire", "#2266cc"),
        Label("bead", 2, "Bead", "#cc2222"),
        Label("unit", 2),
        Label("counit", 2),
    )
)


def pm(a, b):
    return PosetMor(a, b)


def two_point_slice(x, y):
    """A depth-1 slice with two singular points labelled x and y."""
    return Zigzag(
        ("region",) * 3,
        (x, y),
        (pm("region", x), pm("region", y)),
        (pm("region", x), pm("region", y)),
    )


def relabel(src, tgt):
    return ZigzagMap(
        src,
        tgt,
        Monotone.identity(src.length),
        tuple(pm(a, b) for a, b in zip(src.singulars, tgt.singulars)),
    )


def staggered_beads() -> Diagram:
    """Two beads on parallel wires at distinct heights."""
    ww = two_point_slice("wire", "wire")
    bw = two_point_slice("bead", "wire")
    wb = two_point_slice("wire", "bead")
    return Diagram(
        2,
        Zigzag(
            (ww, ww, ww),
            (bw, wb),
            (relabel(ww, bw), relabel(ww, wb)),
            (relabel(ww, bw), relabel(ww, wb)),
        ),
    )


def level_beads() -> Diagram:
    """The same two beads at a single height."""
    ww = two_point_slice("wire", "wire")
    bb = two_point_slice("bead", "bead")
    return Diagram(2, Zigzag((ww, ww), (bb,), (relabel(ww, bb),), (relabel(ww, bb),)))


def opposing_units() -> Diagram:
    """A unit above a counit with nothing between them; contracting the
    two heights needs a bias."""
    e1 = Zigzag(("region",), (), (), ())

    def point(x):
        return Zigzag(
            ("region", "region"), (x,), (pm("region", x),), (pm("region", x),)
        )

    def birth(tgt):
        return ZigzagMap(e1, tgt, Monotone(0, 1, ()), ())

    su, sc = point("unit"), point("counit")
    return Diagram(
        2,
        Zigzag(
            (e1, e1, e1),
            (su, sc),
            (birth(su), birth(sc)),
            (birth(su), birth(sc)),
        ),
    )


def beads_workspace() -> Workspace:
    return Workspace(
        BEADS_SIG,
        {"beads": staggered_beads(), "opposed": opposing_units()},
        (),
    )
