import pytest
from hypothesis import given, strategies as st

from zigzagcat.catcore import DiagramShape
from zigzagcat.errors import BiasRequired, IndexOutOfRange, NoColimit, SizeMismatch
from zigzagcat.monotone import (
    Bias,
    DeltaDiagram,
    Monotone,
    RegularMonotone,
    above_set,
    biased_cocone,
    compose,
    delta_colimit,
    reversal,
    reversal_inverse,
    top_extend,
)
from zigzagcat.oracles import delta_colimit_oracle, enumerate_monotones


def monotones(max_n=8, max_m=8):
    return st.tuples(
        st.integers(0, max_n), st.integers(0, max_m)
    ).flatmap(
        lambda nm: st.lists(
            st.integers(0, max(nm[1] - 1, 0)),
            min_size=nm[0],
            max_size=nm[0],
        ).map(lambda vs: Monotone(nm[0], nm[1], tuple(sorted(vs))))
        if nm[1] > 0
        else st.just(Monotone(0, 0, ()))
    )


def regular_monotones(max_m=7, max_n=7):
    return monotones(max_m, max_n).map(reversal)


class TestMonotoneBasics:
    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            Monotone(2, 3, (2, 1))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Monotone(1, 2, (2,))

    def test_empty_source_allowed(self):
        f = Monotone(0, 5, ())
        assert f.source_size == 0

    def test_regular_requires_endpoints(self):
        with pytest.raises(ValueError):
            RegularMonotone(2, 3, (0, 1))
        RegularMonotone(2, 3, (0, 2))

    def test_regular_equals_plain_with_same_fields(self):
        assert RegularMonotone(2, 2, (0, 1)) == Monotone(2, 2, (0, 1))


class TestCompose:
    def test_identity_left(self):
        g = Monotone(3, 5, (0, 2, 4))
        assert compose(Monotone.identity(3), g) == g

    def test_pointwise(self):
        f = Monotone(2, 2, (0, 1))
        g = Monotone(2, 3, (1, 2))
        assert compose(f, g) == Monotone(2, 3, (1, 2))

    def test_empty_source(self):
        f = Monotone(0, 2, ())
        g = Monotone(2, 5, (0, 3))
        assert compose(f, g) == Monotone(0, 5, ())

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            compose(Monotone.identity(2), Monotone.identity(3))


class TestTopExtend:
    def test_empty(self):
        assert top_extend(Monotone(0, 2, ())) == Monotone(1, 3, (2,))

    def test_identity(self):
        assert top_extend(Monotone.identity(2)) == Monotone.identity(3)

    def test_general(self):
        f = Monotone(3, 4, (0, 2, 2))
        assert top_extend(f) == Monotone(4, 5, (0, 2, 2, 4))


class TestAboveSet:
    def test_enumeration(self):
        f = Monotone(3, 4, (0, 2, 2))
        assert above_set(f, 2) == {1, 2}

    def test_zero_is_everything(self):
        f = Monotone(3, 4, (0, 2, 2))
        assert above_set(f, 0) == {0, 1, 2}

    def test_empty_result(self):
        assert above_set(Monotone(2, 3, (0, 0)), 2) == frozenset()

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            above_set(Monotone(2, 3, (0, 0)), 3)


class TestReversal:
    def test_pinned_example(self):
        # the running example map on singular heights, [0,1,1,4]: [4]->[5]
        g = Monotone(4, 5, (0, 1, 1, 4))
        assert reversal(g) == RegularMonotone(6, 5, (0, 1, 3, 3, 3, 4))

    def test_identity(self):
        assert reversal(Monotone.identity(2)) == RegularMonotone.identity(3)

    def test_counting_formula(self):
        f = Monotone(3, 4, (1, 1, 3))
        assert reversal(f) == RegularMonotone(5, 4, (0, 0, 2, 2, 3))

    def test_inverse_pinned(self):
        g = RegularMonotone(5, 4, (0, 0, 2, 2, 3))
        assert reversal_inverse(g) == Monotone(3, 4, (1, 1, 3))

    def test_inverse_identity(self):
        assert reversal_inverse(RegularMonotone.identity(3)) == Monotone.identity(2)

    def test_inverse_singleton_hom(self):
        g = RegularMonotone(2, 2, (0, 1))
        assert reversal_inverse(g) == Monotone.identity(1)

    @given(monotones())
    def test_round_trip(self, f):
        assert reversal_inverse(reversal(f)) == f

    @given(regular_monotones())
    def test_round_trip_other_way(self, g):
        assert reversal(reversal_inverse(g)) == g

    @given(monotones())
    def test_output_preserves_endpoints(self, f):
        g = reversal(f)
        assert g.values[0] == 0 and g.values[-1] == g.target_size - 1

    @given(monotones(5, 5), st.data())
    def test_contravariant_functoriality(self, f, data):
        g = data.draw(
            st.sampled_from(
                list(enumerate_monotones(f.target_size, 4))
                or [Monotone(f.target_size, 5, (0,) * f.target_size)]
            )
        )
        assert reversal(compose(f, g)) == compose(reversal(g), reversal(f))


def span(left: Monotone, right: Monotone) -> DeltaDiagram:
    assert left.source_size == right.source_size
    shape = DiagramShape(3, ((1, 0), (1, 2)))
    return DeltaDiagram(
        shape, (left.target_size, left.source_size, right.target_size), (left, right)
    )


class TestDeltaColimit:
    def test_single_node(self):
        d = DeltaDiagram(DiagramShape(1), (3,), ())
        c = delta_colimit(d)
        assert c.size == 3 and c.legs == (Monotone.identity(3),)

    def test_opposing_span_has_no_colimit(self):
        d = span(Monotone(0, 1, ()), Monotone(0, 1, ()))
        with pytest.raises(NoColimit) as e:
            delta_colimit(d)
        assert e.value.cause == "Incomparable"

    def test_pushout_pinned(self):
        # [2] <-(0|->1)- [1] -(0|->0)-> [2] glues to a 3-element order
        d = span(Monotone(1, 2, (1,)), Monotone(1, 2, (0,)))
        c = delta_colimit(d)
        assert c.size == 3
        assert c.legs[0] == Monotone(2, 3, (0, 1))
        assert c.legs[2] == Monotone(2, 3, (1, 2))

    def test_cocone_commutes(self):
        d = span(Monotone(1, 2, (1,)), Monotone(1, 2, (0,)))
        assert delta_colimit(d).commutes(d)

    def test_precedence_cycle_collapses(self):
        # gluing both ends of [2] onto one point of each [3] traps the middle
        # element of the right order in a cycle; every cocone must flatten it
        d = span(Monotone(2, 3, (0, 0)), Monotone(2, 3, (0, 2)))
        c = delta_colimit(d)
        assert c.size == 3
        assert c.legs[0] == Monotone(3, 3, (0, 1, 2))
        assert c.legs[1] == Monotone(2, 3, (0, 0))
        assert c.legs[2] == Monotone(3, 3, (0, 0, 0))

    def test_agrees_with_separation_oracle_on_spans(self):
        for left in enumerate_monotones(2, 3):
            for right in enumerate_monotones(2, 3):
                d = span(left, right)
                expected = delta_colimit_oracle(d)
                try:
                    got = delta_colimit(d)
                except NoColimit:
                    got = None
                assert got == expected, (left, right)


class TestBiasedCocone:
    def test_lower_breaks_the_span(self):
        d = span(Monotone(0, 1, ()), Monotone(0, 1, ()))
        c = biased_cocone(d, Bias.LOWER)
        assert c.size == 2
        assert c.legs[0] == Monotone(1, 2, (0,))
        assert c.legs[2] == Monotone(1, 2, (1,))

    def test_higher_mirrors(self):
        d = span(Monotone(0, 1, ()), Monotone(0, 1, ()))
        c = biased_cocone(d, Bias.HIGHER)
        assert c.legs[0] == Monotone(1, 2, (1,))
        assert c.legs[2] == Monotone(1, 2, (0,))

    def test_bias_required(self):
        d = span(Monotone(0, 1, ()), Monotone(0, 1, ()))
        with pytest.raises(BiasRequired):
            biased_cocone(d, Bias.NONE)

    def test_equals_colimit_when_it_exists(self):
        d = span(Monotone(1, 2, (1,)), Monotone(1, 2, (0,)))
        for bias in Bias:
            assert biased_cocone(d, bias) == delta_colimit(d)

    def test_always_a_cocone(self):
        for left in enumerate_monotones(1, 2):
            for right in enumerate_monotones(1, 3):
                d = span(left, right)
                for bias in (Bias.LOWER, Bias.HIGHER):
                    assert biased_cocone(d, bias).commutes(d)

    def test_cycle_still_resolves(self):
        d = span(Monotone(2, 3, (0, 0)), Monotone(2, 3, (0, 2)))
        for bias in Bias:
            assert biased_cocone(d, bias) == delta_colimit(d)
