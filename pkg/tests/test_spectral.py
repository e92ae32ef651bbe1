import json
from fractions import Fraction

import pytest

from sl2ybe.exact import DomainError, HalfInt, QuadExt
from sl2ybe.spectral import (PoleError, RationalFunction, baxter_b, baxter_tl,
                             check_regularity_unitarity, constant_baxter,
                             constant_root, custom_family, eval_coeff,
                             exceptional_s3, family_from_json, family_to_json,
                             identity_family, krs_prefix, make_family,
                             permutation_family, reduced_d, yang,
                             zamolodchikov)

F = Fraction


class TestYang:
    def test_coefficient_value(self):
        fam = yang(1)
        assert eval_coeff(fam, 1, F(2)) == F(-1, 3)
        assert eval_coeff(fam, 2, F(2)) == 1

    def test_pole(self):
        with pytest.raises(PoleError):
            eval_coeff(yang(1), 0, F(-1))

    def test_reduced_diagonal(self):
        d = reduced_d(yang("1/2"), 1, F(1))
        assert d.entries == (F(1), F(0))


class TestZamolodchikov:
    def test_shifted_coefficient_factorizes(self):
        fam = zamolodchikov(1, 2)
        # r_0 = (1-l)(1-2l)/((1+l)(1+2l))
        assert eval_coeff(fam, 0, F(1)) == 0
        assert eval_coeff(fam, 0, F(1, 3)) == (F(2, 3) * F(1, 3)) / (F(4, 3) * F(5, 3))

    def test_g_pole_reported(self):
        fam = zamolodchikov(1, 2)  # g = -6l/(1+2l)
        with pytest.raises(PoleError):
            eval_coeff(fam, 0, F(-1, 2))

    def test_lower_coefficients_undefined(self):
        fam = zamolodchikov(2, 2)
        with pytest.raises(DomainError):
            eval_coeff(fam, 0, F(1))

    def test_m_bounds(self):
        with pytest.raises(DomainError):
            zamolodchikov(1, 1)
        with pytest.raises(DomainError):
            zamolodchikov("1/2", 2)


class TestBaxterB:
    def test_golden_case(self):
        assert baxter_b(F(1, 3)) == QuadExt(F(3, 2), F(1, 2), 5)

    def test_double_root(self):
        assert baxter_b(F(1, 2)) == 1

    def test_perfect_square_discriminant(self):
        b = baxter_b(F(2, 5))
        assert b.is_rational and b.as_fraction() == 2

    def test_defining_equation(self):
        for eta in (F(1, 3), F(1, 4), F(1, 5), F(2, 5)):
            b = baxter_b(eta)
            assert b + b.inverse() == QuadExt(1 / eta, 0, b.d)

    def test_negative_discriminant(self):
        with pytest.raises(DomainError):
            baxter_b(F(3, 4))


class TestBaxterTL:
    def test_functional_equation(self):
        # g(t)+g(u)-g(tu)+g(t)g(u)+eta^2 g(t)g(u)g(tu) == 0 exactly in Q(sqrt d)
        for ts in (2, 3, 4):
            fam = baxter_tl(HalfInt(ts))
            eta = fam.params["eta"]
            g = lambda t: eval_coeff(fam, 0, t) - 1
            for (t, u) in ((F(2), F(3)), (F(5), F(2)), (F(3), F(7))):
                lhs = (g(t) + g(u) - g(t * u) + g(t) * g(u)
                       + eta * eta * g(t) * g(u) * g(t * u))
                assert lhs.is_zero, (ts, t, u)

    def test_multiplicative_parameterization(self):
        fam = baxter_tl(1)
        assert fam.multiplicative
        assert fam.compose(F(2), F(3)) == 6
        assert fam.invert_sample(F(2)) == F(1, 2)

    def test_lower_members_rejected(self):
        with pytest.raises(DomainError):
            baxter_tl(2, m=2)

    def test_field_is_irrational(self):
        assert baxter_tl(1).discriminant == 5
        assert baxter_tl("3/2").discriminant == 3


class TestKrsPrefix:
    def test_three_defined_coefficients(self):
        fam = krs_prefix(2)
        assert fam.defined() == [2, 3, 4]
        tau = F(4, 3)
        lam = F(1, 2)
        expected = (1 - lam) / (1 + lam) * (1 - tau * lam) / (1 + tau * lam)
        assert eval_coeff(fam, 2, lam) == expected

    def test_lower_is_domain_error(self):
        with pytest.raises(DomainError):
            eval_coeff(krs_prefix(2), 1, F(1))

    def test_matches_shifted_family_when_full(self):
        # for s = 1, m = 2 the shifted family defines the same three coefficients
        prefix, shifted = krs_prefix(1), zamolodchikov(1, 2)
        for lam in (F(1, 2), F(2), F(5, 7)):
            for j in (0, 1, 2):
                assert eval_coeff(prefix, j, lam) == eval_coeff(shifted, j, lam)


class TestExceptionalS3:
    def test_coefficients(self):
        fam = exceptional_s3()
        assert fam.s == HalfInt(6)
        assert eval_coeff(fam, 3, F(1)) == F(3, 5)
        assert eval_coeff(fam, 0, F(1)) == 0
        assert eval_coeff(fam, 4, F(9)) == 1

    def test_level_nine_carries_the_middle_coefficient(self):
        # at the top level the single index is k = 3, so the diagonal holds r_3
        d = reduced_d(exceptional_s3(), 9, F(1))
        assert d.entries == (F(3, 5),)


class TestConstantFamilies:
    def test_permutation_signs(self):
        fam = permutation_family(1)
        assert [eval_coeff(fam, j, F(0)) for j in (0, 1, 2)] == [1, -1, 1]

    def test_identity(self):
        fam = identity_family("3/2")
        assert all(eval_coeff(fam, j, F(3)) == 1 for j in range(4))

    def test_constant_baxter_root(self):
        fam = constant_baxter(1, 2)
        g = fam.params["g"]
        assert g == QuadExt(F(-9, 2), F(3, 2), 5)
        eta = fam.params["eta"]
        assert (1 + g + eta * eta * g * g).is_zero

    def test_constant_root_branches(self):
        plus, minus = constant_root(F(1, 3), +1), constant_root(F(1, 3), -1)
        assert plus != minus and plus.conjugate() == minus


class TestRegularityUnitarity:
    def test_yang(self):
        report = check_regularity_unitarity(yang(1), [F(1, 2), F(2), F(7, 3)])
        assert report["pass"]

    def test_exceptional(self):
        # lambda = 1 is excluded: its mirror -1 is a pole of three coefficients
        report = check_regularity_unitarity(exceptional_s3(), [F(1, 2), F(3, 2)])
        assert report["pass"]

    def test_exceptional_pole_at_mirror_sample(self):
        with pytest.raises(PoleError):
            check_regularity_unitarity(exceptional_s3(), [F(1)])

    def test_baxter_tl_multiplicative(self):
        report = check_regularity_unitarity(baxter_tl(1), [F(2), F(3), F(5, 2)])
        assert report["pass"]

    def test_failure_is_reported(self):
        bad = custom_family("1/2", {
            0: RationalFunction((F(1), F(1)), (F(1),)),  # 1 + l: not unitary
            1: RationalFunction((F(1),), (F(1),)),
        })
        report = check_regularity_unitarity(bad, [F(1, 2)])
        assert not report["pass"]
        assert any(f["check"] == "unitary" for f in report["failures"])

    def test_irregular_family_rejected_at_construction(self):
        with pytest.raises(DomainError):
            custom_family(1, {2: RationalFunction((F(2),), (F(1),))})


class TestFamilySerialization:
    def test_builtin_roundtrip(self):
        doc = family_to_json(yang("3/2"))
        fam = family_from_json(doc)
        assert fam.tag == "yang" and fam.s == HalfInt(3)

    def test_custom_roundtrip(self):
        tables = {
            0: RationalFunction((F(1), F(-1)), (F(1), F(1))),
            1: RationalFunction((F(1),), (F(1),)),
        }
        fam = custom_family("1/2", tables)
        doc = json.loads(json.dumps(family_to_json(fam)))
        back = family_from_json(doc)
        for lam in (F(0), F(1, 3), F(4)):
            assert eval_coeff(back, 0, lam) == eval_coeff(fam, 0, lam)

    def test_make_family_dispatch(self):
        assert make_family("exceptional-s3").tag == "exceptional-s3"
        assert make_family("zamolodchikov", HalfInt(2), 2).m == 2
        with pytest.raises(DomainError):
            make_family("nonsense", 1)
