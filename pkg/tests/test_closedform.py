"""Analytic route: scalar formulas and their internal consistency."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from eavesim.closedform import (
    alice_bob_information,
    bob_error_product,
    bob_error_recursive,
    bob_error_substitution,
    crossover_disturbance,
    gains,
    mutual_informations,
    optimal_information,
    phi,
)

from oracles import CROSSOVER, GAINS_123, HALF_PHI_048, HALF_PHI_06, PHI_06

d_lists = st.lists(st.floats(0.0, 0.5, allow_nan=False), min_size=0, max_size=8)


class TestPhi:
    def test_endpoints(self):
        assert phi(0.0) == 0.0
        assert phi(1.0) == 2.0

    def test_frozen_value(self):
        assert phi(0.6) == pytest.approx(PHI_06, abs=1e-15)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            phi(1.5)
        with pytest.raises(ValueError):
            phi(-0.2)


class TestOptimalInformation:
    def test_endpoints(self):
        assert optimal_information(0.0) == 0.0
        assert optimal_information(0.5) == pytest.approx(1.0, abs=1e-15)

    def test_frozen_value(self):
        assert optimal_information(0.1) == pytest.approx(HALF_PHI_06, abs=1e-15)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            optimal_information(0.6)


class TestGains:
    def test_single(self):
        assert gains((0.1,)) == pytest.approx((0.6,), abs=1e-15)

    def test_pair(self):
        assert gains((0.1, 0.1)) == pytest.approx((0.6, 0.48), abs=1e-15)

    def test_triple_frozen(self):
        assert gains((0.1, 0.2, 0.3)) == pytest.approx(GAINS_123, abs=1e-12)

    def test_strictly_decreasing_for_equal_positive_disturbance(self):
        g = gains((0.2,) * 5)
        assert all(g[i] > g[i + 1] for i in range(4))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            gains((0.7,))


class TestMutualInformations:
    def test_trivial_endpoints(self):
        assert mutual_informations((0.0,)) == pytest.approx((0.0,), abs=1e-15)
        assert mutual_informations((0.5,)) == pytest.approx((1.0,), abs=1e-15)

    def test_pair_frozen(self):
        assert mutual_informations((0.1, 0.1)) == pytest.approx(
            (HALF_PHI_06, HALF_PHI_048), abs=1e-12)


class TestBobError:
    def test_recursive_pair(self):
        assert bob_error_recursive((0.1, 0.2)) == pytest.approx(0.26, abs=1e-15)

    def test_idle_tail_collapses(self):
        for d1 in (0.0, 0.15, 0.4):
            assert bob_error_recursive((d1, 0.0)) == pytest.approx(d1, abs=1e-15)

    def test_triple_frozen(self):
        assert bob_error_recursive((0.1, 0.2, 0.3)) == pytest.approx(
            0.404, abs=1e-12)
        assert bob_error_substitution((0.1, 0.2, 0.3)) == pytest.approx(
            0.404, abs=1e-12)

    def test_third_attacker_idle_matches_pair_formula(self):
        assert bob_error_recursive((0.1, 0.2, 0.0)) == pytest.approx(
            bob_error_recursive((0.1, 0.2)), abs=1e-15)

    def test_product_empty_chain(self):
        assert bob_error_product(()) == 0.0

    def test_product_saturating_factor(self):
        assert bob_error_product((0.5, 0.3)) == pytest.approx(0.5, abs=1e-15)

    @given(d_lists)
    @settings(max_examples=400, deadline=None)
    def test_substitution_equals_complement_recursion(self, d):
        assert abs(bob_error_substitution(d) - bob_error_recursive(d)) <= 1e-15

    @given(d_lists)
    @settings(max_examples=400, deadline=None)
    def test_product_equals_recursion(self, d):
        assert abs(bob_error_product(d) - bob_error_recursive(d)) <= 1e-15


class TestCrossover:
    def test_location(self):
        d_star = crossover_disturbance()
        assert 0.14 < d_star < 0.15
        assert d_star == pytest.approx(CROSSOVER, abs=1e-6)
        assert d_star == pytest.approx(0.5 - math.sqrt(2.0) / 4.0, abs=1e-9)

    def test_residual(self):
        d_star = crossover_disturbance()
        assert abs(optimal_information(d_star)
                   - alice_bob_information(d_star)) < 1e-9

    def test_bracketing_signs(self):
        assert optimal_information(0.1) < alice_bob_information(0.1)
        assert optimal_information(0.2) > alice_bob_information(0.2)
