"""Word algebra: counting functions, substitution, iteration."""

import random

import pytest

from bouquet_dyn import (
    BRANCH_FREE,
    Letter,
    MapAction,
    Word,
    action,
    apply_endo,
    chi,
    chi_of_iterate,
    gamma,
    gamma_of_iterate,
    iterate_action,
    orientation,
    word,
)
from bouquet_dyn.errors import BudgetError, InputError
from bouquet_dyn.words import boundary_letters, orientation_of_power

from conftest import random_action


class TestLetters:
    def test_parse_plain(self):
        assert Letter.parse("a3") == Letter(3, 1)

    def test_parse_inverse(self):
        assert Letter.parse("a12'") == Letter(12, -1)

    def test_roundtrip(self):
        for tok in ("a1", "a7'", "a10"):
            assert Letter.parse(tok).token() == tok

    @pytest.mark.parametrize("bad", ["a0", "b1", "a", "a1''", "a-2", "a01"])
    def test_bad_tokens(self, bad):
        with pytest.raises(InputError):
            Letter.parse(bad)

    def test_inverse_involution(self):
        l = Letter(2, -1)
        assert l.inverse().inverse() == l


class TestWords:
    def test_mixed_sign_rejected(self):
        with pytest.raises(InputError):
            Word((Letter(1, 1), Letter(2, -1)))

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            Word(())
        with pytest.raises(InputError):
            Word.parse("   ")

    def test_inverse_reverses_and_flips(self):
        w = word("a1 a2 a3")
        assert w.inverse().text() == "a3' a2' a1'"


class TestChiGamma:
    def test_chi_repeated_generator(self):
        # chi_j(a_j a_{j+1} a_j) = 2
        assert chi(word("a2 a3 a2"), 2) == 2

    def test_chi_absent(self):
        assert chi(word("a2 a3"), 1) == 0

    def test_chi_inverse_pair(self):
        assert chi(word("a1' a1'"), 1) == -2

    def test_gamma_boundary_only(self):
        # both occurrences of a_2 sit on the boundary
        assert gamma(word("a2 a3 a2"), 2) == 0

    def test_gamma_single_letter(self):
        assert gamma(word("a2"), 2) == 0

    def test_gamma_interior(self):
        assert gamma(word("a2 a1 a1 a3"), 1) == 2

    def test_chi_concat_additive(self, rng):
        for _ in range(50):
            f = random_action(rng)
            u = f.image(1)
            v = f.image(f.n)
            if u.sign != v.sign:
                continue
            uv = u.concat(v)
            for j in range(1, f.n + 1):
                assert chi(uv, j) == chi(u, j) + chi(v, j)

    def test_gamma_chi_gap_bound(self, rng):
        for _ in range(50):
            w = random_action(rng, n_max=4, len_max=6).image(1)
            for j in range(1, 5):
                assert abs(gamma(w, j)) >= abs(chi(w, j)) - 2


class TestApplyEndo:
    def test_direct_substitution(self):
        f = action("a1 a2", "a1")
        assert apply_endo(f, word("a2")).text() == "a1"

    def test_inverse_reversal_rule(self):
        f = action("a1' a1'")
        assert apply_endo(f, word("a1'")).text() == "a1 a1"

    def test_concatenation(self):
        f = action("a1 a2", "a1")
        assert apply_endo(f, word("a1 a2")).text() == "a1 a2 a1"

    def test_homomorphism_law(self, rng):
        for _ in range(30):
            f = random_action(rng)
            u, v = f.image(1), f.image(f.n)
            if u.sign != v.sign:
                continue
            lhs = apply_endo(f, u.concat(v))
            rhs = apply_endo(f, u).concat(apply_endo(f, v))
            assert lhs == rhs

    def test_inverse_law(self, rng):
        for _ in range(30):
            f = random_action(rng)
            w = f.image(1)
            assert apply_endo(f, w.inverse()) == apply_endo(f, w).inverse()

    def test_closure_sign(self, rng):
        for _ in range(30):
            f = random_action(rng)
            w = f.image(1)
            assert apply_endo(f, w).sign == w.sign * f.global_sign


class TestIterateAction:
    def test_first_iterate_is_identity(self):
        f = action("a1 a2", "a1")
        assert iterate_action(f, 1) == f

    def test_reversing_square(self):
        f = action("a1' a1'")
        assert iterate_action(f, 2).image(1).text() == "a1 a1 a1 a1"

    def test_third_iterate(self):
        f = action("a1 a2", "a1")
        assert iterate_action(f, 3).image(1).text() == "a1 a2 a1 a1 a2"

    def test_budget_error_names_smallest_m(self):
        f = action("a1 a1")
        with pytest.raises(BudgetError) as e:
            iterate_action(f, 40, budget=100)
        assert e.value.smallest_m is not None
        assert 2 <= e.value.smallest_m <= 8


class TestIterateCounts:
    def test_chi_of_square(self):
        f = action("a1' a1'")
        assert chi_of_iterate(f, 2, 1) == 4

    def test_chi_base_case(self, rng):
        for _ in range(20):
            f = random_action(rng)
            for j in range(1, f.n + 1):
                assert chi_of_iterate(f, 1, j) == chi(f.image(j), j)

    def test_gamma_single_interior(self):
        f = action("a1 a1 a1")
        assert gamma_of_iterate(f, 1, 1) == 1

    def test_counts_match_expansion(self, rng):
        for _ in range(40):
            f = random_action(rng)
            for m in (1, 2, 3, 4):
                try:
                    g = iterate_action(f, m, budget=20000)
                except BudgetError:
                    break
                for j in range(1, f.n + 1):
                    w = g.image(j)
                    assert chi_of_iterate(f, m, j) == chi(w, j)
                    assert gamma_of_iterate(f, m, j) == gamma(w, j)

    def test_boundary_letters_match_expansion(self, rng):
        for _ in range(40):
            f = random_action(rng)
            for m in (1, 2, 3):
                try:
                    g = iterate_action(f, m, budget=20000)
                except BudgetError:
                    break
                for j in range(1, f.n + 1):
                    first, last = boundary_letters(f, m, j)
                    assert first == g.image(j).letters[0]
                    assert last == g.image(j).letters[-1]


class TestMapAction:
    def test_global_sign_required(self):
        with pytest.raises(InputError):
            MapAction(2, (word("a1 a2"), word("a1'")), BRANCH_FREE)

    def test_index_range_checked(self):
        with pytest.raises(InputError):
            action("a1 a3", "a1")

    def test_branch_class_validation(self):
        with pytest.raises(InputError):
            action("a1 a1", k=0)
        with pytest.raises(InputError):
            action("a1 a1", k=2.5)

    def test_orientation(self):
        assert orientation(action("a1 a1")) == "preserving"
        assert orientation(action("a1' a1'")) == "reversing"

    def test_orientation_of_power(self):
        f = action("a1' a1'")
        assert orientation_of_power(f, 2) == "preserving"
        assert orientation_of_power(f, 3) == "reversing"
