import pytest
from hypothesis import given

from helpers import (
    MonoidBase,
    chain,
    composable_monotone_pairs,
    poset_map,
    poset_zigzag,
    small_monotones,
    star_map,
    star_zigzag,
)
from zigzagcat.catcore import DiagramShape, TerminalCategory, PosetMor
from zigzagcat.errors import BoundaryMismatch, IndexOutOfRange
from zigzagcat.monotone import Monotone, RegularMonotone, compose
from zigzagcat.zigzag import (
    Zigzag,
    ZigzagDiagram,
    ZigzagMap,
    apply_functor,
    boundaries,
    compose_maps,
    concatenate,
    concatenate_maps,
    deconstruct,
    identity_map,
    regular_map,
    restrict,
    restrict_map,
    validate_map,
    validate_zigzag,
)

C3 = chain(3)
STARS = TerminalCategory()


def length_4_to_5_fixture():
    """A length-4 to length-5 map over a chain with singular map [0,1,1,4];
    exercises every clause of the validator: outer composites, an interior
    square, and two empty-preimage forks."""
    source = poset_zigzag(C3, [0, 1, 0, 1, 0, 1, 0, 1, 0])
    target = poset_zigzag(C3, [0, 1, 0, 2, 0, 1, 0, 1, 0, 2, 0])
    return poset_map(C3, source, target, (0, 1, 1, 4))


class TestValidation:
    def test_identity_is_valid(self):
        z = poset_zigzag(C3, [0, 2, 1, 2, 0])
        assert validate_map(C3, identity_map(C3, z)) == []

    def test_pinned_fixture_is_valid(self):
        m = length_4_to_5_fixture()
        assert validate_map(C3, m) == []

    def test_regular_object_equalities(self):
        m = length_4_to_5_fixture()
        reg = regular_map(m)
        assert reg == RegularMonotone(6, 5, (0, 1, 3, 3, 3, 4))
        for j in range(6):
            assert m.source.regulars[reg(j)] == m.target.regulars[j]

    def test_regular_mismatch_detected(self):
        source = poset_zigzag(C3, [0, 1, 0, 1, 0, 1, 0, 1, 0])
        target = poset_zigzag(C3, [0, 1, 0, 2, 1, 2, 1, 2, 1, 2, 0])
        m = poset_map(C3, source, target, (0, 1, 1, 4))
        bad = validate_map(C3, m)
        assert (2, "regular objects differ") in bad

    def test_zigzag_endpoint_violations(self):
        z = Zigzag(
            (0, 1),
            (2,),
            (PosetMor(0, 2),),
            (PosetMor(0, 2),),  # wrong source: should start at 1
        )
        assert validate_zigzag(C3, z) == [(0, "backward source")]


class TestSquares:
    base = MonoidBase()
    star = MonoidBase.STAR

    def build(self, g0="w", g1="w", fwd="aw", bwd="dw"):
        source = Zigzag(
            (self.star,) * 3, (self.star,) * 2, ("a", "z"), ("z", "d")
        )
        target = Zigzag((self.star,) * 2, (self.star,), (fwd,), (bwd,))
        return ZigzagMap(source, target, Monotone(2, 1, (0, 0)), (g0, g1))

    def test_squares_hold(self):
        assert validate_map(self.base, self.build()) == []

    def test_interior_square_violation(self):
        bad = validate_map(self.base, self.build(g1="v", bwd="dv"))
        assert bad == [(0, "interior square at source height 0")]

    def test_forward_composite_violation(self):
        bad = validate_map(self.base, self.build(fwd="ax"))
        assert bad == [(0, "forward composite")]

    def test_empty_preimage_fork(self):
        source = Zigzag((self.star,), (), (), ())
        good = Zigzag((self.star,) * 2, (self.star,), ("u",), ("u",))
        fork = ZigzagMap(source, good, Monotone(0, 1, ()), ())
        assert validate_map(self.base, fork) == []
        broken = Zigzag((self.star,) * 2, (self.star,), ("u",), ("v",))
        bad = ZigzagMap(source, broken, Monotone(0, 1, ()), ())
        assert validate_map(self.base, bad) == [
            (0, "empty preimage needs forward = backward")
        ]


class TestCategoryLaws:
    @given(small_monotones())
    def test_any_monotone_gives_a_valid_untyped_map(self, f):
        assert validate_map(STARS, star_map(f)) == []

    @given(composable_monotone_pairs())
    def test_composition_is_valid_and_tracks_monotones(self, pair):
        f, g = pair
        m = compose_maps(STARS, star_map(f), star_map(g))
        assert m.sing_map == compose(f, g)
        assert validate_map(STARS, m) == []

    @given(small_monotones())
    def test_identity_laws(self, f):
        m = star_map(f)
        left = compose_maps(STARS, identity_map(STARS, m.source), m)
        right = compose_maps(STARS, m, identity_map(STARS, m.target))
        assert left == m and right == m


class TestConcatenate:
    def test_unit(self):
        z = poset_zigzag(C3, [0, 2, 1])
        unit = Zigzag.of_length_0(1)
        assert concatenate(z, unit) == z
        assert concatenate(Zigzag.of_length_0(0), z) == z

    def test_lengths_add_and_associativity(self):
        z1, z2, z3 = star_zigzag(2), star_zigzag(3), star_zigzag(1)
        glued = concatenate(concatenate(z1, z2), z3)
        assert glued.length == 6
        assert glued == concatenate(z1, concatenate(z2, z3))

    def test_boundary_mismatch(self):
        with pytest.raises(BoundaryMismatch):
            concatenate(poset_zigzag(C3, [0, 2, 1]), poset_zigzag(C3, [0, 2, 1]))

    def test_concatenate_maps(self):
        m1 = star_map(Monotone(2, 1, (0, 0)))
        m2 = star_map(Monotone(1, 2, (1,)))
        m = concatenate_maps(m1, m2)
        assert m.sing_map == Monotone(3, 3, (0, 0, 2))
        assert validate_map(STARS, m) == []


class TestRestrict:
    def test_full_window(self):
        z = poset_zigzag(C3, [0, 2, 1, 2, 0])
        assert restrict(z, 0, 2) == z

    def test_empty_window(self):
        z = poset_zigzag(C3, [0, 2, 1, 2, 0])
        assert restrict(z, 1, 1) == Zigzag.of_length_0(1)

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            restrict(star_zigzag(2), 1, 4)

    def test_restrict_map_full(self):
        m = length_4_to_5_fixture()
        assert restrict_map(m, 0, 5) == m

    def test_restrict_map_window(self):
        # target window (1,2) pulls back to source window (1,3)
        m = length_4_to_5_fixture()
        r = restrict_map(m, 1, 2)
        assert r.source == restrict(m.source, 1, 3)
        assert r.target == restrict(m.target, 1, 2)
        assert r.sing_map == Monotone(2, 1, (0, 0))
        assert validate_map(C3, r) == []

    def test_nested_restriction_composes(self):
        m = length_4_to_5_fixture()
        twice = restrict_map(restrict_map(m, 1, 4), 0, 2)
        assert twice == restrict_map(m, 1, 3)


class TestDeconstruct:
    def test_single_cospan(self):
        d = ZigzagDiagram(DiagramShape(1), (star_zigzag(1),), ())
        dec = deconstruct(STARS, d)
        assert dec.shape.num_nodes == 3
        assert len(dec.shape.arrows) == 2

    def test_two_nodes_identity_map(self):
        z = star_zigzag(2)
        d = ZigzagDiagram(
            DiagramShape(2, ((0, 1),)), (z, z), (identity_map(STARS, z),)
        )
        dec = deconstruct(STARS, d)
        assert dec.shape.num_nodes == 2 * (2 * 2 + 1)
        # four cospan arrows per node, two slice arrows, three regular arrows
        assert len(dec.shape.arrows) == 8 + 2 + 3

    def test_objects_track_heights(self):
        m = length_4_to_5_fixture()
        d = ZigzagDiagram(
            DiagramShape(2, ((0, 1),)), (m.source, m.target), (m,)
        )
        dec = deconstruct(C3, d)
        assert dec.objects[dec.node_of[(0, "s", 1)]] == m.source.singulars[1]
        assert dec.objects[dec.node_of[(1, "r", 3)]] == m.target.regulars[3]


class TestFunctorsAndBoundaries:
    def test_shift_functor(self):
        z = poset_zigzag(C3, [0, 1, 0, 2, 1])
        shifted = apply_functor(
            lambda o: o + 1, lambda m: PosetMor(m.src + 1, m.tgt + 1), z
        )
        assert validate_zigzag(chain(4), shifted) == []
        assert shifted.regulars == (1, 1, 2)

    def test_collapse_to_terminal(self):
        m = length_4_to_5_fixture()
        collapsed = apply_functor(
            lambda o: "*", lambda f: PosetMor("*", "*"), m
        )
        assert validate_map(STARS, collapsed) == []
        assert collapsed.sing_map == m.sing_map

    def test_boundaries(self):
        assert boundaries(Zigzag.of_length_0(7)) == (7, 7)
        m = length_4_to_5_fixture()
        assert boundaries(m.source) == boundaries(m.target) == (0, 0)
