"""Kauffman-bracket Jones engine and the closed product forms."""

import pytest

from pretzelkh import (
    admissible_patterns,
    assemble,
    kauffman_jones,
    laurent_from_pairs,
    orient_pretzel,
    orient_torus2,
    pretzel_diagram,
    pretzel_ll0_jones,
    torus2_jones,
)

from conftest import pretzel_instances


def poly(pairs):
    return laurent_from_pairs(pairs)


class TestKauffman:
    def test_unknot(self):
        r = kauffman_jones(orient_torus2(1))
        assert r.unnormalized == poly([(-1, 1), (1, 1)])
        assert r.normalized == poly([(0, 1)])

    def test_positive_hopf(self):
        r = kauffman_jones(orient_torus2(2))
        assert r.unnormalized == poly([(0, 1), (2, 1), (4, 1), (6, 1)])
        assert r.normalized == poly([(1, 1), (5, 1)])

    def test_right_trefoil(self):
        r = kauffman_jones(orient_torus2(3))
        assert r.normalized == poly([(2, 1), (6, 1), (8, -1)])

    def test_mirror_inverts_the_variable(self):
        pos = kauffman_jones(orient_torus2(3)).unnormalized
        neg = kauffman_jones(orient_torus2(-3)).unnormalized
        assert neg == pos.substitute_inverse()

    def test_unnormalized_is_ring_multiple_of_normalized(self):
        ring = poly([(-1, 1), (1, 1)])
        r = kauffman_jones(orient_pretzel(pretzel_diagram(2, 3, 3), "RL"))
        assert r.normalized * ring == r.unnormalized

    def test_crossing_limit_enforced(self):
        with pytest.raises(Exception):
            kauffman_jones(orient_torus2(9), max_crossings=5)


class TestTorusClosedForm:
    @pytest.mark.parametrize("k", range(2, 9))
    def test_matches_kauffman(self, k):
        assert torus2_jones(k) == kauffman_jones(orient_torus2(k)).normalized

    def test_trefoil_value(self):
        assert torus2_jones(3) == poly([(2, 1), (6, 1), (8, -1)])

    def test_hopf_value(self):
        assert torus2_jones(2) == poly([(1, 1), (5, 1)])


class TestPretzelLL0ClosedForm:
    @pytest.mark.parametrize("l", range(2, 7))
    def test_lr_matches_kauffman(self, l):
        od = orient_pretzel(pretzel_diagram(l, l, 0), "LR")
        assert pretzel_ll0_jones(l, "LR") == kauffman_jones(od).unnormalized

    @pytest.mark.parametrize("l", (2, 4, 6))
    def test_rl_matches_kauffman_for_even_l(self, l):
        od = orient_pretzel(pretzel_diagram(l, l, 0), "RL")
        assert pretzel_ll0_jones(l, "RL") == kauffman_jones(od).unnormalized

    @pytest.mark.parametrize("l", range(2, 9))
    def test_rl_is_lr_shifted_by_three_l(self, l):
        shift = poly([(3 * l, 1)])
        assert pretzel_ll0_jones(l, "RL") == pretzel_ll0_jones(l, "LR") * shift


def test_euler_characteristic_equals_jones_small_sweep():
    for (l, m, n) in pretzel_instances(10):
        for pattern in admissible_patterns(l, m, n):
            od = orient_pretzel(pretzel_diagram(l, m, n), pattern)
            lhs = assemble(l, m, n, pattern).euler_characteristic()
            assert lhs == kauffman_jones(od).unnormalized, (l, m, n, pattern)
