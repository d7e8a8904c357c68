"""Well-structured decompositions, L/U splitting, and skein bookkeeping."""

import pytest

from pretzelkh import (
    BigradedSpace,
    CancellationWitness,
    EMap,
    GradedSequence,
    InvalidCrossing,
    NotWellStructured,
    TooManyComponents,
    UnsplittableSpace,
    admissible_patterns,
    assemble,
    build_space,
    cancellation_witness,
    check_no_cancellation,
    decompose,
    expected_exceptional_t,
    exceptional_t,
    grading_shifts,
    homology,
    orient_any,
    orient_pretzel,
    pretzel_diagram,
    resolve_crossing,
    skein_triple,
    split_L_U,
    torus2_diagram,
)

from conftest import pretzel_instances


def pair_at(t, q):
    """One exceptional pair: generators at (t, q) and (t, q + 2)."""
    return BigradedSpace({(t, q): 1, (t, q + 2): 1})


class TestDecompose:
    def test_empty_space(self):
        d = decompose(BigradedSpace({}))
        assert d.sequence.is_zero()
        assert d.exceptional.is_zero()
        assert d.space().is_zero()

    def test_single_exceptional_pair(self):
        d = decompose(pair_at(0, 0))
        assert d.sequence.as_tuple() == (1,)
        assert d.exceptional.as_dict() == {0: 1}
        assert d.base == (0, 0)
        assert d.e_locations() == (0,)
        assert d.space() == pair_at(0, 0)

    def test_single_knight_pair(self):
        v = BigradedSpace({(0, 0): 1, (1, 4): 1})
        d = decompose(v)
        assert d.sequence.as_tuple() == (1,)
        assert d.exceptional.is_zero()
        assert d.space() == v

    def test_shifted_space_round_trips(self):
        v = build_space(
            GradedSequence((1, 0, 2, 1)), EMap({3: 1})
        ).shift(-7, -3)
        d = decompose(v)
        assert d.space() == v
        assert d.base[0] == -3

    def test_three_diagonals_rejected(self):
        with pytest.raises(NotWellStructured):
            decompose(BigradedSpace({(0, 0): 1, (0, 2): 1, (0, 4): 1}))

    def test_orphan_generator_rejected(self):
        # a lone generator on the lower diagonal with nothing above it
        with pytest.raises(NotWellStructured):
            decompose(BigradedSpace({(0, 0): 2, (1, 4): 1}))

    def test_formula_summands_round_trip(self):
        from pretzelkh import summands

        for (l, m, n) in [(3, 5, 7), (2, 3, 4), (3, 4, 4), (4, 5, 6)]:
            for pattern in admissible_patterns(l, m, n):
                lo, up = summands(l, m, n, pattern)
                assert decompose(lo).space() == lo
                assert decompose(up).space() == up


class TestSplitLU:
    def test_split_matches_formula_summands(self):
        from pretzelkh import summands

        for (l, m, n) in pretzel_instances(12):
            for pattern in admissible_patterns(l, m, n):
                v = assemble(l, m, n, pattern)
                dmax = grading_shifts(l, m, n, pattern).delta_max
                lo, up = split_L_U(v, dmax)
                want_lo, want_up = summands(l, m, n, pattern)
                assert lo == want_lo, (l, m, n, pattern)
                assert up == want_up, (l, m, n, pattern)

    def test_wide_support_rejected(self):
        v = BigradedSpace({(0, 0): 1, (0, 6): 1})
        with pytest.raises(UnsplittableSpace):
            split_L_U(v, 6)

    def test_unsplittable_population_rejected(self):
        # one generator on the middle diagonal with empty top and bottom
        # cannot be completed to two well-structured summands
        v = BigradedSpace({(0, 0): 3, (1, 4): 1})
        with pytest.raises(UnsplittableSpace):
            split_L_U(v, 2)


class TestExpectedExceptionalT:
    def test_knot(self):
        od = orient_pretzel(pretzel_diagram(3, 5, 7), "RR")
        assert expected_exceptional_t(od) == (0,)

    def test_two_components(self):
        od = orient_pretzel(pretzel_diagram(2, 2, 3), "RL")
        assert expected_exceptional_t(od) == (0, 4)

    def test_three_components(self):
        od = orient_pretzel(pretzel_diagram(2, 2, 2), "RL")
        assert expected_exceptional_t(od) == (0, 4, 4, 4)

    def test_four_components_rejected(self):
        d = torus2_diagram(4)
        while d.crossings:
            d = resolve_crossing(d, 0, 1)
        assert orient_any(d).component_count == 4
        with pytest.raises(TooManyComponents):
            expected_exceptional_t(orient_any(d))

    def test_formula_locations_match_linking_small(self):
        for (l, m, n) in pretzel_instances(11):
            for pattern in admissible_patterns(l, m, n):
                od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
                got = tuple(sorted(exceptional_t(l, m, n, pattern)))
                assert got == expected_exceptional_t(od), (l, m, n, pattern)


class TestCancellationWitness:
    def test_zero_witness(self):
        w = CancellationWitness({})
        assert w.is_zero
        assert w.total == 0

    def test_forced_counts(self):
        # the connecting map raises t by one and preserves q, so full
        # cancellation needs W's pair directly above V's
        v = pair_at(0, 0)
        w = pair_at(1, 0)
        x = BigradedSpace({})
        wit = cancellation_witness(v, w, x)
        assert wit is not None
        assert wit.total == 2
        assert not wit.is_zero

    def test_no_consistent_chain(self):
        v = BigradedSpace({})
        w = BigradedSpace({})
        x = pair_at(0, 0)
        assert cancellation_witness(v, w, x) is None

    def test_trivial_triple_has_zero_witness(self):
        v = pair_at(0, 0)
        w = pair_at(5, 0)
        x = v + w
        wit = cancellation_witness(v, w, x)
        assert wit is not None and wit.is_zero


class TestCheckNoCancellation:
    def test_direct_sum_passes(self):
        v = pair_at(0, 0)
        w = pair_at(0, 0)
        assert check_no_cancellation(v, w, v + w) is True

    def test_lost_pairs_fail(self):
        v = pair_at(0, 0)
        w = pair_at(0, 0)
        x = BigradedSpace({(0, 0): 2, (1, 4): 2})  # knights, no pairs
        assert check_no_cancellation(v, w, x) is False

    def test_inexact_triple_raises(self):
        v = pair_at(0, 0)
        w = pair_at(0, 0)
        x = BigradedSpace({(0, 0): 3, (0, 2): 3})
        with pytest.raises(ValueError):
            check_no_cancellation(v, w, x)

    def test_wide_inputs_rejected(self):
        v = pair_at(0, 0)
        w = pair_at(0, 6)
        with pytest.raises(ValueError):
            check_no_cancellation(v, w, v + w)


class TestSkeinTriple:
    def test_bad_crossing_index(self):
        od = orient_pretzel(pretzel_diagram(2, 2, 2), "RL")
        with pytest.raises(InvalidCrossing):
            skein_triple(od, 99, homology)

    def test_negative_crossing_step(self):
        # the rightmost-band step of the (3,3,2) surgery chain
        pd = pretzel_diagram(3, 3, 2)
        od = orient_pretzel(pd, "LR")
        tri = skein_triple(od, pd.band_crossings[2][0], homology)
        assert tri.sign == -1
        assert tri.epsilon == -1
        assert tri.x == homology(od)
        # the unoriented resolution is a two-circle unlink up to moves
        assert dict(tri.w.items()) == {(0, -3): 1, (0, -1): 2, (0, 1): 1}
        wit = cancellation_witness(tri.v, tri.w, tri.x)
        assert wit is not None
        assert wit.total == 2

    def test_positive_crossing_step(self):
        pd = pretzel_diagram(2, 2, 2)
        od = orient_pretzel(pd, "RL")
        tri = skein_triple(od, pd.band_crossings[2][0], homology)
        assert tri.sign == 1
        assert tri.epsilon == 2 + 2 - 1
        wit = cancellation_witness(tri.v, tri.w, tri.x)
        assert wit is not None and wit.is_zero

    def test_resolutions_drop_one_crossing(self):
        pd = pretzel_diagram(2, 3, 3)
        od = orient_pretzel(pd, "RL")
        tri = skein_triple(od, 0, homology)
        assert len(tri.oriented_resolution.diagram.crossings) == 7
        assert len(tri.unoriented_resolution.diagram.crossings) == 7

    def test_dimension_bound_from_exactness(self):
        # a long exact sequence forces |dim X - dim V - dim W| to be even
        # and bounded; check the simplest consequence dim X <= dim V + dim W
        pd = pretzel_diagram(3, 3, 2)
        od = orient_pretzel(pd, "LR")
        tri = skein_triple(od, pd.band_crossings[2][0], homology)
        assert tri.x.total_dim <= tri.v.total_dim + tri.w.total_dim
