from fractions import Fraction

import pytest

from sl2ybe.exact import DomainError, HalfInt
from sl2ybe.spectral import (RationalFunction, baxter_tl, constant_baxter,
                             custom_family, exceptional_s3, identity_family,
                             krs_prefix, permutation_family, yang,
                             zamolodchikov)
from sl2ybe.ybe import (DEFAULT_GRID, SECOND_GRID, ansatz_residual_crosscheck,
                        coeff_functions, constant_check, default_grid,
                        full_check, reduced_ybe_check, second_grid, theta)

F = Fraction


def perturbed_yang(two_s=1):
    """Yang with r_0 multiplied by (1 + lambda^2): regular but not a solution."""
    ts = two_s
    tables = {}
    for j in range(ts + 1):
        sign = -1 if (ts - j) % 2 else 1
        num = (F(1), F(sign))
        if j == 0:
            # (1 + sign*l)(1 + l^2)
            num = (F(1), F(sign), F(1), F(sign))
        tables[j] = RationalFunction(num, (F(1), F(1)))
    return custom_family(HalfInt(ts), tables)


class TestReducedCheck:
    def test_yang_level_one(self):
        assert reduced_ybe_check(yang("1/2"), 1, F(1, 2), F(1, 3)).is_zero

    def test_exceptional_level_four(self):
        assert reduced_ybe_check(exceptional_s3(), 4, F(1), F(2)).is_zero

    def test_perturbed_yang_fails(self):
        res = reduced_ybe_check(perturbed_yang(), 1, F(1), F(1))
        assert not res.is_zero

    def test_swap_symmetry_of_verdict(self):
        fams = [yang(1), perturbed_yang()]
        for fam in fams:
            for lam, mu in DEFAULT_GRID:
                fwd = reduced_ybe_check(fam, 1, lam, mu).is_zero
                bwd = reduced_ybe_check(fam, 1, mu, lam).is_zero
                assert fwd == bwd


class TestFullCheck:
    @pytest.mark.parametrize("ts", [1, 2, 3, 4])
    def test_yang_all_levels(self, ts):
        fam = yang(HalfInt(ts))
        for grid in (DEFAULT_GRID, SECOND_GRID):
            assert full_check(fam, samples=grid)["pass"]

    @pytest.mark.parametrize("ts", [2, 3, 4])
    def test_shifted_family_all_levels(self, ts):
        fam = zamolodchikov(HalfInt(ts), ts)
        for grid in (DEFAULT_GRID, SECOND_GRID):
            assert full_check(fam, samples=grid)["pass"]

    @pytest.mark.parametrize("ts", [2, 3, 4])
    def test_baxter_tl_all_levels(self, ts):
        fam = baxter_tl(HalfInt(ts))
        for grid in (default_grid(fam), second_grid(fam)):
            assert full_check(fam, samples=grid)["pass"]

    def test_exceptional_all_levels(self):
        fam = exceptional_s3()
        report = full_check(fam, levels=range(0, 10))
        assert report["pass"]
        assert [lvl["n"] for lvl in report["levels"]] == list(range(10))

    @pytest.mark.parametrize("ts", [2, 3, 4, 5, 6])
    def test_krs_prefix_levels(self, ts):
        fam = krs_prefix(HalfInt(ts))
        assert full_check(fam, levels=range(0, 3))["pass"]

    def test_prefix_level_beyond_definition(self):
        with pytest.raises(DomainError, match="r_1"):
            full_check(krs_prefix(2), levels=[3])

    def test_default_levels_respect_definition(self):
        report = full_check(krs_prefix(2))
        assert [lvl["n"] for lvl in report["levels"]] == [0, 1, 2]

    def test_negative_control_fails_level_one(self):
        report = full_check(perturbed_yang(), levels=[1], samples=[(F(1), F(1))])
        assert not report["pass"]


class TestCoeffFunctions:
    def test_linear_f_gives_zero(self):
        c = coeff_functions(1, 2, 1, lambda l: l, lambda l: F(0), F(1, 2), F(1, 3))
        assert c.F == 0 and c.G == 0 and c.H == 0 and c.theta == 0

    def test_shifted_solution_annihilates(self):
        from sl2ybe.amatrix import eta_closed_form
        eta = eta_closed_form(1, 2)

        def g(l):
            return l / (eta - F(1, 2) - eta * l)

        c = coeff_functions(1, 2, 2, lambda l: l, g, F(1, 2), F(1, 3))
        assert c.G == 0 and c.H == 0 and c.H_swapped == 0
        assert c.xi == 1 and c.eta == F(1, 3) and c.theta == 1

    def test_multiplicative_tl_annihilates(self):
        fam = baxter_tl("3/2")
        g = lambda t: fam.eval_coeff(0, t) - 1
        c = coeff_functions("3/2", 3, 3, lambda t: t * 0, g, F(2), F(3),
                            combine=lambda a, b: a * b)
        assert c.G.is_zero

    def test_top_index_reproduces_base_constants(self):
        # m = 2s gives xi = (-1)^2s and eta = 1/(2s+1)
        for ts in (2, 3, 4):
            c = coeff_functions(HalfInt(ts), ts, ts, lambda l: l, lambda l: F(0),
                                F(1, 2), F(1, 5))
            assert c.xi == (-1 if ts % 2 else 1)
            assert c.eta == F(1, ts + 1)


class TestAnsatzCrosscheck:
    def test_linear_solution(self):
        r = ansatz_residual_crosscheck(1, 2, 1, lambda l: l, lambda l: F(0),
                                       F(1, 2), F(1, 3))
        assert r.matches and r.residual_zero

    def test_shifted_solution(self):
        from sl2ybe.amatrix import eta_closed_form
        eta = eta_closed_form(1, 2)

        def g(l):
            return l / (eta - F(1, 2) - eta * l)

        r = ansatz_residual_crosscheck(1, 2, 2, lambda l: l, g, F(1, 2), F(1, 3))
        assert r.matches and r.residual_zero

    def test_quadratic_f_nonsolution(self):
        r = ansatz_residual_crosscheck(1, 2, 1, lambda l: l * l, lambda l: F(0),
                                       F(1), F(1))
        assert r.matches and not r.residual_zero
        # F_{l,m} = l^2 + m^2 - (l+m)^2 = -2 at (1, 1)
        c = coeff_functions(1, 2, 1, lambda l: l * l, lambda l: F(0), F(1), F(1))
        assert c.F == -2

    def test_generic_nonsolution_at_active_level(self):
        r = ansatz_residual_crosscheck(2, 3, 3, lambda l: l, lambda l: l,
                                       F(1, 2), F(1, 3))
        assert r.matches and not r.residual_zero

    def test_prefactor_recorded(self):
        r = ansatz_residual_crosscheck(1, 2, 1, lambda l: l, lambda l: F(0),
                                       F(1), F(2))
        assert r.prefactor == (1 + 1) * (1 + 2) * (1 + 3)

    def test_prefactor_zero_rejected(self):
        with pytest.raises(DomainError):
            ansatz_residual_crosscheck(1, 2, 1, lambda l: l, lambda l: F(0),
                                       F(-1), F(2))


class TestConstantCheck:
    def test_permutation_all_levels(self):
        assert constant_check(permutation_family(1))["pass"]

    def test_identity_all_levels(self):
        assert constant_check(identity_family("3/2"))["pass"]

    def test_constant_baxter(self):
        report = constant_check(constant_baxter(1, 2), levels=[0, 1, 2])
        assert report["pass"]

    def test_top_index_member_is_full_solution(self):
        for branch in (+1, -1):
            for ts in (2, 3, 4):
                assert constant_check(constant_baxter(HalfInt(ts), ts, branch))["pass"]

    def test_truncated_member_fails_above_its_level(self):
        # with m < 2s the two-term family passes levels <= m and breaks at
        # m + 1: the lower coefficients it omits are genuinely required
        report = constant_check(constant_baxter(2, 3))
        verdicts = {row["n"]: row["zero"] for row in report["levels"]}
        assert all(verdicts[n] for n in range(0, 4))
        assert not verdicts[4]

    def test_theta_inactive_levels_pass_vacuously(self):
        report = constant_check(constant_baxter(1, 2), levels=[0, 1])
        assert report["pass"]


class TestTheta:
    def test_inactive_below_m(self):
        assert theta(1, 2, 1) == 0

    def test_active_at_m(self):
        assert theta(1, 2, 2) == 1

    def test_inactive_outside_shifted_range(self):
        assert theta("3/2", 3, 4) == 0
        assert theta("3/2", 2, 4) == 1


class TestLevelZeroIdentity:
    def test_all_catalog_families_trivial_at_level_zero(self):
        fams = [yang(1), zamolodchikov(2, 2), baxter_tl(1), krs_prefix(2),
                exceptional_s3(), permutation_family(1), identity_family(1)]
        for fam in fams:
            lam, mu = (F(2), F(3)) if fam.multiplicative else (F(1, 2), F(1, 3))
            assert reduced_ybe_check(fam, 0, lam, mu).is_zero
