"""Family construction: frozen sequences, structure, round trips."""

from dataclasses import replace
from fractions import Fraction
from math import factorial

import pytest

from polygenocchi import (
    APOSTOL_BERNOULLI,
    APOSTOL_GENOCCHI,
    APOSTOL_GENOCCHI_HIGHER,
    BERNOULLI_T1,
    BERNOULLI_T2,
    CLASSICAL_GENOCCHI,
    CLASSICAL_GENOCCHI_HIGHER,
    CLASSICAL_POINT,
    FROBENIUS,
    TYPE1,
    TYPE2,
    FamilySpec,
    ParamPoint,
    Poly,
    appell_expand,
    expansion_from_dict,
    expansion_to_dict,
    family_series,
    numbers_list,
    polynomial_at,
    symmetrized_S,
)
from polygenocchi.errors import SingularDenominator

import oracles

GENERIC = ParamPoint(Fraction(2), Fraction(1, 2), Fraction(1, 3), Fraction(2))


class TestSpecValidation:
    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            FamilySpec("no-such-family")

    def test_k_required(self):
        with pytest.raises(ValueError):
            FamilySpec(TYPE1)
        with pytest.raises(ValueError):
            FamilySpec(CLASSICAL_GENOCCHI, k=2)

    def test_mu_only_for_frobenius(self):
        with pytest.raises(ValueError):
            FamilySpec(TYPE1, k=1, mu=Fraction(2))
        with pytest.raises(ValueError):
            FamilySpec(FROBENIUS)

    def test_mu_one_singular(self):
        with pytest.raises(SingularDenominator):
            FamilySpec(FROBENIUS, mu=Fraction(1))

    def test_alpha_fixed_for_order_one_tags(self):
        with pytest.raises(ValueError):
            FamilySpec(CLASSICAL_GENOCCHI, alpha=2)
        FamilySpec(CLASSICAL_GENOCCHI_HIGHER, alpha=2)

    def test_negative_alpha(self):
        with pytest.raises(ValueError):
            FamilySpec(TYPE1, k=1, alpha=-1)


class TestClassicalReduction:
    def test_polynomials_match_long_division_oracle(self):
        expected = oracles.genocchi_polynomials(10)
        spec = FamilySpec(TYPE1, k=1, alpha=1)
        got = family_series(spec, CLASSICAL_POINT, 10)
        for n, coeffs in enumerate(expected):
            assert got.polys[n] == Poly(coeffs), f"degree {n}"

    def test_three_routes_agree(self):
        routes = [
            family_series(FamilySpec(TYPE1, k=1, alpha=1), CLASSICAL_POINT, 8),
            family_series(FamilySpec(TYPE2, k=1, alpha=1), CLASSICAL_POINT, 8),
            family_series(FamilySpec(CLASSICAL_GENOCCHI), CLASSICAL_POINT, 8),
            family_series(
                FamilySpec(CLASSICAL_GENOCCHI_HIGHER, alpha=1), CLASSICAL_POINT, 8
            ),
            family_series(FamilySpec(APOSTOL_GENOCCHI), CLASSICAL_POINT, 8),
        ]
        for other in routes[1:]:
            assert routes[0].polys == other.polys

    def test_classical_numbers(self):
        nums = list(numbers_list(FamilySpec(CLASSICAL_GENOCCHI), CLASSICAL_POINT, 8))
        assert nums == [0, 1, -1, 0, 1, 0, -3, 0, 17]


class TestKnownSequences:
    def test_bernoulli_numbers(self):
        point = ParamPoint(Fraction(1), Fraction(0), Fraction(1), Fraction(1))
        nums = list(numbers_list(
            FamilySpec(APOSTOL_BERNOULLI, alpha=1), point, 6
        ))
        assert nums == [
            1,
            Fraction(-1, 2),
            Fraction(1, 6),
            0,
            Fraction(-1, 30),
            0,
            Fraction(1, 42),
        ]

    def test_euler_polynomials_from_frobenius(self):
        spec = FamilySpec(FROBENIUS, alpha=1, mu=Fraction(-1))
        got = family_series(spec, CLASSICAL_POINT, 3)
        assert got.polys[0] == Poly((1,))
        assert got.polys[1] == Poly((Fraction(-1, 2), 1))
        assert got.polys[2] == Poly((0, -1, 1))
        assert got.polys[3] == Poly((Fraction(1, 4), 0, Fraction(-3, 2), 1))

    def test_apostol_genocchi_lam_two(self):
        point = ParamPoint(Fraction(2), Fraction(0), Fraction(1), Fraction(1))
        nums = list(numbers_list(FamilySpec(APOSTOL_GENOCCHI), point, 3))
        # 2t/(2e^t + 1): direct division oracle
        den = oracles.exp_coeffs(1, 3)
        den = [2 * c for c in den]
        den[0] += 1
        kernel = oracles.divide([Fraction(0), Fraction(2)], den, 3)
        assert nums == [kernel[n] * factorial(n) for n in range(4)]

    def test_higher_order_bernoulli_t2_at_k1(self):
        # both Bernoulli-type kernels coincide at weight one
        a = family_series(FamilySpec(BERNOULLI_T1, k=1, alpha=2), GENERIC, 6)
        b = family_series(FamilySpec(BERNOULLI_T2, k=1, alpha=2), GENERIC, 6)
        assert a.polys == b.polys


class TestStructure:
    @pytest.mark.parametrize("tag", [TYPE1, TYPE2])
    @pytest.mark.parametrize("alpha", [0, 1, 2, 3])
    def test_leading_zeros_match_alpha(self, tag, alpha):
        spec = FamilySpec(tag, k=2, alpha=alpha)
        got = family_series(spec, GENERIC, 6)
        for n in range(alpha):
            assert got.polys[n].is_zero
        assert not got.polys[alpha].is_zero

    def test_degrees_bounded(self):
        spec = FamilySpec(TYPE1, k=-2, alpha=2)
        got = family_series(spec, GENERIC, 8)
        for n, p in enumerate(got.polys):
            assert p.degree <= n

    def test_numbers_ignore_ln_c(self):
        spec = FamilySpec(TYPE2, k=2, alpha=1)
        a = numbers_list(spec, GENERIC, 6)
        b = numbers_list(spec, replace(GENERIC, ln_c=Fraction(7)), 6)
        assert a == b

    def test_polynomial_at_consistent(self):
        spec = FamilySpec(TYPE1, k=2, alpha=2)
        full = family_series(spec, GENERIC, 7)
        assert polynomial_at(spec, GENERIC, 5) == full.polys[5]

    def test_appell_expand_uses_numbers(self):
        spec = FamilySpec(TYPE1, k=1, alpha=1)
        nums = list(numbers_list(spec, CLASSICAL_POINT, 4))
        poly = appell_expand(spec, CLASSICAL_POINT, 4)
        # sum_i C(4,i) nums[i] x^{4-i} written out directly
        direct = [Fraction(0)] * 5
        for i in range(5):
            weight = Fraction(factorial(4), factorial(i) * factorial(4 - i))
            direct[4 - i] += weight * nums[i]
        assert poly == Poly(direct)

    def test_singular_lambda(self):
        with pytest.raises(SingularDenominator):
            family_series(
                FamilySpec(APOSTOL_GENOCCHI),
                ParamPoint(Fraction(-1), Fraction(0), Fraction(1), Fraction(1)),
                4,
            )


class TestRoundTrip:
    def test_json_round_trip(self):
        spec = FamilySpec(TYPE2, k=-1, alpha=2)
        expansion = family_series(spec, GENERIC, 5)
        payload = expansion_to_dict(expansion)
        back = expansion_from_dict(payload)
        assert back == expansion

    def test_dict_is_json_safe(self):
        import json

        spec = FamilySpec(FROBENIUS, alpha=2, mu=Fraction(1, 3))
        expansion = family_series(spec, CLASSICAL_POINT, 4)
        text = json.dumps(expansion_to_dict(expansion))
        assert expansion_from_dict(json.loads(text)) == expansion


class TestSymmetrized:
    def test_zero_order_matches_family(self):
        # m = 0 collapses to the plain family member rescaled by ln(ab)^n
        spec = FamilySpec(TYPE1, k=0, alpha=1)
        n = 3
        member = polynomial_at(spec, GENERIC, n)
        got = symmetrized_S(0, n, 1, GENERIC, Fraction(0))
        lab = GENERIC.ln_ab
        assert got == member * (Fraction(1) / lab**n)

    def test_first_order_assembly(self):
        # S_n^{(1,a)} = P_n^{(0,a)}/ln(ab)^n * w + P_n^{(-1,a)}/ln(ab)^n
        pt = GENERIC
        n, alpha, y0 = 3, 2, Fraction(1, 3)
        lab = pt.ln_ab
        w = (y0 * pt.ln_c + alpha * pt.ln_a) / lab
        p0 = polynomial_at(FamilySpec(TYPE1, k=0, alpha=alpha), pt, n)
        p1 = polynomial_at(FamilySpec(TYPE1, k=-1, alpha=alpha), pt, n)
        expected = p0 * (w / lab**n) + p1 * (Fraction(1) / lab**n)
        assert symmetrized_S(1, n, alpha, pt, y0) == expected

    def test_singular_when_lab_zero(self):
        bad = ParamPoint(Fraction(2), Fraction(1), Fraction(-1), Fraction(1))
        with pytest.raises(SingularDenominator):
            symmetrized_S(1, 2, 1, bad, Fraction(0))
