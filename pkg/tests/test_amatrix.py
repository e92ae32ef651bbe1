from fractions import Fraction

import pytest

from sl2ybe.amatrix import (LevelRange, RankOneProjector, SignDiagonal,
                            a_entry_from_sixj, a_matrix,
                            consecutive_level_ratio, eta, eta_closed_form,
                            top_level, verify_a_properties,
                            verify_projector_algebra, verify_sign_conjugation)
from sl2ybe.exact import DomainError, HalfInt, SqrtRational

GRID = [(ts, n) for ts in range(1, 7) for n in range(0, 3 * ts // 2 + 1)]


class TestLevelRange:
    def test_low_levels_run_from_zero(self):
        rng = LevelRange.for_level(1, 2)
        assert (rng.k_min, rng.k_max, rng.dim) == (0, 2, 3)

    def test_shifted_levels(self):
        rng = LevelRange.for_level("3/2", 4)
        assert (rng.k_min, rng.k_max) == (1, 2)
        assert rng.shifted

    def test_level_bounds(self):
        assert top_level(HalfInt.coerce(3)) == 9
        with pytest.raises(DomainError):
            LevelRange.for_level(1, 4)

    def test_projector_requires_index_in_range(self):
        rng = LevelRange.for_level("3/2", 4)
        with pytest.raises(DomainError):
            RankOneProjector(rng, 3)


class TestConstruction:
    def test_two_by_two(self):
        a = a_matrix("1/2", 1)
        assert a.entry(0, 0) == Fraction(1, 2)
        assert a.entry(1, 1) == Fraction(-1, 2)
        assert a.entry(0, 1) == SqrtRational(Fraction(1, 2), 3)
        assert a.entry(1, 0) == SqrtRational(Fraction(1, 2), 3)

    def test_level_zero_is_one(self):
        for ts in range(1, 7):
            a = a_matrix(HalfInt(ts), 0)
            assert a.dim == 1 and a.entry(0, 0) == 1

    def test_exceptional_diagonal_entry(self):
        assert a_matrix("5/2", 4).diagonal_rational(3) == Fraction(1, 2)

    def test_level_out_of_range(self):
        with pytest.raises(DomainError):
            a_matrix(1, 4)

    def test_gauge_consistency(self):
        # raw entries squared reproduce u_k u_k' M_kk'^2
        a = a_matrix("3/2", 3)
        for k in a.range.indices():
            for kp in a.range.indices():
                raw = a.entry(k, kp)
                sq = raw * raw
                i, j = k - a.range.k_min, kp - a.range.k_min
                assert sq.is_rational
                assert sq.as_fraction() == (a.weights[i] * a.weights[j]
                                            * a.core[i][j] ** 2)

    def test_shared_weights_per_level(self):
        assert a_matrix(2, 3) is a_matrix(2, 3)  # cached, hence same gauge

    def test_matches_sixj_route_everywhere(self):
        for ts, n in GRID:
            a = a_matrix(HalfInt(ts), n)
            for k in a.range.indices():
                for kp in a.range.indices():
                    assert a.entry(k, kp) == a_entry_from_sixj(HalfInt(ts), n, k, kp), \
                        (ts, n, k, kp)


class TestProperties:
    @pytest.mark.parametrize("ts,n", GRID)
    def test_symmetric_involution(self, ts, n):
        assert verify_a_properties(HalfInt(ts), n)

    @pytest.mark.parametrize("ts,n", GRID)
    def test_sign_conjugation(self, ts, n):
        assert verify_sign_conjugation(HalfInt(ts), n)

    def test_named_cases(self):
        assert verify_a_properties("1/2", 1)
        assert verify_a_properties(3, 9)
        assert verify_a_properties(1, 3)
        assert verify_sign_conjugation("1/2", 1)
        assert verify_sign_conjugation(3, 4)
        assert verify_sign_conjugation(2, 6)

    def test_sign_diagonal_entries(self):
        d0 = SignDiagonal(LevelRange.for_level(2, 5)).matrix()
        assert [d0[i][i] for i in range(3)] == [-1, 1, -1]  # k = 1, 2, 3


class TestEta:
    def test_examples(self):
        assert eta(1, 2, 2) == Fraction(1, 3)
        assert eta("3/2", 3, 3) == Fraction(1, 4)
        assert eta("5/2", 3, 4) == Fraction(1, 2)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            eta("3/2", 3, 4)

    def test_closed_form_matches_matrix(self):
        for ts in range(2, 9):
            for m in range(2, ts + 1):
                assert eta(HalfInt(ts), m, m) == eta_closed_form(HalfInt(ts), m), (ts, m)

    def test_top_index_reduces_to_inverse_dimension(self):
        for ts in range(1, 9):
            assert eta_closed_form(HalfInt(ts), ts) == Fraction(1, ts + 1)

    def test_magnitude_bound(self):
        # |eta_mm| < 1/2 for 2 <= m <= 2s
        for ts in range(2, 9):
            for m in range(2, ts + 1):
                assert abs(eta_closed_form(HalfInt(ts), m)) < Fraction(1, 2)


class TestLevelShiftRatio:
    def test_ratio_value(self):
        assert consecutive_level_ratio("3/2", 3) == -2

    def test_ratio_identity_on_validity_grid(self):
        # A_mm^(s,m+1) = ratio * A_mm^(s,m) for 2 <= m <= 2s-1
        for ts in range(2, 9):
            for m in range(2, ts):
                lhs = a_matrix(HalfInt(ts), m + 1).diagonal_rational(m)
                rhs = (consecutive_level_ratio(HalfInt(ts), m)
                       * a_matrix(HalfInt(ts), m).diagonal_rational(m))
                assert lhs == rhs, (ts, m)

    def test_top_index_leaves_next_level(self):
        # at m = 2s the index is outside the level-(m+1) range
        for ts in range(2, 7):
            if 2 * (ts + 1) <= 3 * ts:
                assert ts not in LevelRange.for_level(HalfInt(ts), ts + 1)


class TestProjectorAlgebra:
    @pytest.mark.parametrize("s,m,n", [
        (1, 2, 2), ("3/2", 3, 3), (2, 3, 4), (3, 3, 5), ("5/2", 3, 4),
        (2, 2, 3), (3, 6, 6), ("3/2", 2, 4),
    ])
    def test_identities(self, s, m, n):
        assert verify_projector_algebra(s, m, n)
