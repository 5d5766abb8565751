"""Characteristic polynomial, eigenvalues, entropy, growth thresholds."""

import math

import pytest

from bouquet_dyn import (
    abelianize,
    action,
    char_poly,
    dominant_test,
    eigenvalues,
    entropy_limit,
    entropy_spectral,
    m0_bound,
    mat_pow,
    norm1,
    trace,
)
from bouquet_dyn.errors import InputError

from conftest import random_matrix

LOW_GROWTH = abelianize(action("a1 a3", "a1", "a1 a3", k=1))
SIX_CYCLE = abelianize(action("a1", "a1 a3", "a1 a4", "a1 a2"))
DELAYED = abelianize(action("a1", "a1 a3", "a1 a4 a4", "a1 a2"))
DOMINANT = abelianize(action("a1", "a1 a3", "a1 a4", "a1 a2 a4"))


class TestCharPoly:
    def test_scalar(self):
        assert char_poly(((2,),)) == [-2, 1]

    def test_low_growth(self):
        # x^3 - 2x^2, roots {0, 0, 2}
        assert char_poly(LOW_GROWTH) == [0, 0, -2, 1]

    def test_matches_eigenvalue_product(self, rng):
        for _ in range(20):
            m = random_matrix(rng, 3)
            coeffs = char_poly(m)
            assert coeffs[-1] == 1
            assert coeffs[2] == -trace(m)

    def test_root_residuals(self, rng):
        for _ in range(20):
            m = random_matrix(rng, rng.randint(1, 5))
            s = eigenvalues(m)
            assert s.residual <= 1e-10


class TestEigenvalues:
    def test_low_growth_roots(self):
        s = eigenvalues(LOW_GROWTH)
        assert abs(s.values[0] - 2) < 1e-10
        assert abs(s.values[1]) < 1e-12 and abs(s.values[2]) < 1e-12

    def test_six_cycle_moduli(self):
        s = eigenvalues(SIX_CYCLE)
        for z in s.values:
            assert abs(abs(z) - 1) < 1e-8

    def test_delayed_moduli(self):
        s = eigenvalues(DELAYED)
        target = 2 ** (1 / 3)
        moduli = sorted(abs(z) for z in s.values)
        assert abs(moduli[0] - 1) < 1e-8
        for v in moduli[1:]:
            assert abs(v - target) < 1e-8

    def test_dominant_leading_value(self):
        s = eigenvalues(DOMINANT)
        assert abs(s.values[0].real - 1.47) < 0.01
        assert abs(s.values[0].imag) < 1e-10
        assert abs(s.values[1] - 1) < 1e-8

    def test_identity_matrix(self):
        s = eigenvalues(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        # a triple root clusters with accuracy ~ cbrt(eps); the residual
        # stays tight
        assert all(abs(z - 1) < 1e-4 for z in s.values)
        assert s.residual <= 1e-10

    def test_sorted_by_modulus(self, rng):
        for _ in range(20):
            s = eigenvalues(random_matrix(rng, 4))
            mods = [abs(z) for z in s.values]
            assert all(a >= b - 1e-9 for a, b in zip(mods, mods[1:]))

    def test_trace_identity(self, rng):
        for _ in range(10):
            m = random_matrix(rng, 3, lo=-2, hi=2)
            s = eigenvalues(m)
            for k in (1, 2, 3, 4):
                approx = sum(z**k for z in s.values)
                exact = trace(mat_pow(m, k))
                assert abs(approx - exact) <= 1e-6 * (1 + abs(exact))


class TestEntropy:
    def test_low_growth(self):
        assert abs(entropy_spectral(LOW_GROWTH) - math.log(2)) < 1e-9

    def test_six_cycle_zero(self):
        assert entropy_spectral(SIX_CYCLE) == 0.0

    def test_delayed(self):
        assert abs(entropy_spectral(DELAYED) - math.log(2) / 3) < 1e-9

    def test_clamped_below_one(self):
        with pytest.warns(UserWarning):
            assert entropy_spectral(((0,),)) == 0.0

    def test_limit_sequence_low_growth(self):
        seq = entropy_limit(LOW_GROWTH, 30)
        # closed form from the printed powers: ||M^m|| = 10 * 2^(m-2), m >= 2
        for m in range(2, 31):
            assert abs(seq[m - 1] - (math.log(2) + math.log(10 / 4) / m)) < 1e-12
        assert abs(seq[29] - math.log(2)) < 0.08

    def test_limit_sequence_identity(self):
        seq = entropy_limit(((1, 0), (0, 1)), 10)
        for m in range(1, 11):
            assert abs(seq[m - 1] - math.log(2) / m) < 1e-12

    def test_limit_matches_exact_norms(self, rng):
        m = random_matrix(rng, 3, lo=0, hi=2)
        seq = entropy_limit(m, 8)
        for k in range(1, 9):
            nrm = norm1(mat_pow(m, k))
            if nrm > 0:
                assert abs(seq[k - 1] - math.log(nrm) / k) < 1e-12

    def test_gelfand_agreement(self):
        for mat in (LOW_GROWTH, SIX_CYCLE, DELAYED, DOMINANT):
            s = eigenvalues(mat)
            sigma = s.spectral_radius
            nrm = norm1(mat_pow(mat, 30))
            assert abs(nrm ** (1 / 30) - sigma) <= 0.15 * (1 + sigma)


class TestDominance:
    def test_dominant_fixture(self):
        assert dominant_test(eigenvalues(DOMINANT))

    def test_tied_moduli(self):
        assert not dominant_test(eigenvalues(DELAYED))

    def test_identity_not_dominant(self):
        assert not dominant_test(eigenvalues(((1, 0), (0, 1))))


class TestM0Bound:
    def test_dominant_fixture_threshold(self):
        assert m0_bound(eigenvalues(DOMINANT), 4) == 10

    def test_pure_doubling(self):
        assert m0_bound(eigenvalues(((2,),)), 1) == 3

    def test_requires_dominance(self):
        with pytest.raises(InputError):
            m0_bound(eigenvalues(((1, 0), (0, 1))), 2)

    def test_large_radius_small_threshold(self):
        assert m0_bound(eigenvalues(((10,),)), 1) == 1

    def test_trace_growth_estimate(self):
        # |Tr(M^40)|^(1/40) approaches the dominant eigenvalue modulus
        s = eigenvalues(DOMINANT)
        t = abs(trace(mat_pow(DOMINANT, 40)))
        assert abs(t ** (1 / 40) - s.spectral_radius) <= 0.05
