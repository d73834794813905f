"""Trinomial construction, evaluation, and the two permutation routes."""

import random

import pytest

from niho_perm.errors import GuardExceededError, UsageError
from niho_perm.field import frobenius, tower_field
from niho_perm.trinomials import (FAMILY_CATALOG, FAMILY_IDS, build_trinomial,
                                  eval_trinomial, exhaustive_permutation_report,
                                  family_admits, family_is_conjectural,
                                  induced_mu_map, is_permutation_exhaustive,
                                  is_permutation_via_criterion,
                                  oracle_agreement_report,
                                  power_residue_criterion, random_trinomial,
                                  theorem_family)
from niho_perm.unity import eval_map, unity_group


class TestConstruction:
    def test_exponents(self):
        f = build_trinomial(1, [(1, 0), (1, 2), (-1, 4)])
        assert f.exponents == (1, 9, 17)

    def test_residue_canonicalization(self):
        # c = q+1+2 reduces to 2
        f = build_trinomial(1, [(1, 0), (1, 8), (-1, 4)])
        assert f.terms == ((1, 0), (1, 2), (-1, 4))

    def test_c_one_is_frobenius_monomial(self):
        f = build_trinomial(1, [(1, 1), (1, 2), (-1, 4)])
        assert f.exponents[0] == 5

    def test_leading_sign_fixed(self):
        with pytest.raises(UsageError, match="leading"):
            build_trinomial(1, [(-1, 0), (1, 2), (-1, 4)])

    def test_three_terms_required(self):
        with pytest.raises(UsageError):
            build_trinomial(1, [(1, 0), (1, 2)])

    def test_degenerate_flagged_in_subject(self):
        f = build_trinomial(1, [(1, 0), (1, 2), (-1, 2)])
        assert f.degenerate
        assert "degenerate" in f.subject()
        g = build_trinomial(1, [(1, 0), (1, 2), (-1, 4)])
        assert not g.degenerate

    def test_niho_exponent_congruence(self):
        for k in (1, 2, 3):
            q = 5 ** k
            rng = random.Random(k)
            for _ in range(20):
                f = random_trinomial(k, rng)
                assert all(e % (q - 1) == 1 for e in f.exponents)


class TestEvaluation:
    def test_zero_maps_to_zero(self):
        for fam in ("T1", "C1"):
            f = theorem_family(fam, 1)
            assert eval_trinomial(f, f.field.zero).is_zero

    def test_value_at_w(self):
        f = build_trinomial(1, [(1, 0), (1, 2), (-1, 4)])
        w = f.field.generator
        assert eval_trinomial(f, w).digits == (2, 3)    # 3w + 2

    def test_value_at_one(self):
        for signs in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            f = build_trinomial(1, [(1, 0), (signs[0], 2), (signs[1], 4)])
            expected = f.field.scalar(1 + signs[0] + signs[1])
            assert eval_trinomial(f, f.field.one) == expected

    @pytest.mark.parametrize("k", [1, 2])
    def test_commutes_with_frobenius(self, k):
        # coefficients are in the prime field, so f(x)^q = f(x^q)
        f = theorem_family("T1", k)
        for x in f.field.elements():
            assert eval_trinomial(f, x) ** f.q == eval_trinomial(f, frobenius(x))


class TestExhaustiveOracle:
    def test_t1_passes(self):
        rep = is_permutation_exhaustive(theorem_family("T1", 1))
        assert rep.passed
        assert rep.counts["elements"] == 25

    def test_monomial_path(self):
        # x^7 permutes GF(25) because gcd(7, 24) = 1
        field = tower_field(1)
        rep = exhaustive_permutation_report(field, [(1, 7)], "x^7")
        assert rep.passed
        rep = exhaustive_permutation_report(field, [(1, 6)], "x^6")
        assert not rep.passed

    def test_off_theorem_sign_pattern_reported_honestly(self):
        f = build_trinomial(1, [(1, 0), (1, 2), (1, 4)])
        rep = is_permutation_exhaustive(f)
        assert not rep.passed
        wit = rep.witness
        assert wit["type"] == "collision"
        x1 = f.field.from_csv(wit["x1"])
        x2 = f.field.from_csv(wit["x2"])
        assert eval_trinomial(f, x1) == eval_trinomial(f, x2)
        assert eval_trinomial(f, x1).csv() == wit["value"]

    def test_guard(self):
        f = theorem_family("T1", 5)
        with pytest.raises(GuardExceededError, match="criterion"):
            is_permutation_exhaustive(f)


class TestCriterion:
    def test_induced_map_values(self):
        f = theorem_family("T1", 1)
        m = induced_mu_map(f)
        field = f.field
        one = field.one
        assert eval_map(m, one) == one
        assert eval_map(m, -one) == -one
        # h(1) = 1 + 1 - 1 = 1
        assert m.h_at(one) == one

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_t1_criterion(self, k):
        rep = is_permutation_via_criterion(theorem_family("T1", k))
        assert rep.passed
        assert "gcd" in rep.notes[0]

    def test_zero_witness_fails(self):
        f = build_trinomial(1, [(1, 0), (1, 2), (1, 4)])
        rep = is_permutation_via_criterion(f)
        assert not rep.passed
        assert rep.witness["type"] == "zero"
        # replay: h vanishes at the witness, so f collapses the line through it
        x = f.field.from_csv(rep.witness["x"])
        h = induced_mu_map(f).h_at(x)
        assert h.is_zero

    def test_general_form_gcd_condition_computed(self):
        # l = 2 shares a factor with (q^2-1)/(q+1) = q-1 = 4
        field = tower_field(1)
        rep = power_residue_criterion(field, 2, 6, ((1, 0), (1, 2), (-1, 4)),
                                      "general-form check")
        assert not rep.passed
        assert rep.witness["type"] == "gcd"
        assert rep.witness["gcd"] == 2

    def test_general_form_other_subgroup(self):
        # s = 3 on GF(25): x * g(x^8)^... with g = 1 (monomial x) permutes
        field = tower_field(1)
        rep = power_residue_criterion(field, 1, 3, ((1, 0),), "monomial")
        assert rep.passed

    def test_nonvanishing_facts(self):
        # the h polynomials behind T1, T2, T5a, T6 never vanish on the circle
        for fam, k in (("T1", 1), ("T1", 2), ("T2", 1), ("T5a", 2), ("T6", 2)):
            f = theorem_family(fam, k)
            group = unity_group(f.field)
            m = induced_mu_map(f)
            for i in range(group.n):
                assert not m.h_at(group.element(i)).is_zero, (fam, k, i)


class TestFamilies:
    def test_t1_instantiation(self):
        assert theorem_family("T1", 1).terms == ((1, 0), (1, 2), (-1, 4))

    def test_c1_instantiation(self):
        # leading term x^q; residues from the proof-derived form
        f = theorem_family("C1", 1)
        assert f.terms == ((1, 1), (1, 5), (-1, 3))
        assert f.exponents == (5, 21, 13)

    def test_parity_guards(self):
        with pytest.raises(UsageError, match="where k is even"):
            theorem_family("T6", 3)
        with pytest.raises(UsageError, match="where k is odd"):
            theorem_family("T2", 2)

    def test_unknown_family(self):
        with pytest.raises(UsageError, match="T1"):
            theorem_family("T99", 1)

    def test_conjectural_marking(self):
        assert family_is_conjectural("P1")
        assert family_is_conjectural("P2")
        assert not family_is_conjectural("T1")

    def test_all_families_both_methods_smallest_k(self):
        for fam in FAMILY_IDS:
            k = 1 if family_admits(fam, 1) else 2
            f = theorem_family(fam, k)
            assert is_permutation_via_criterion(f).passed, fam
            assert is_permutation_exhaustive(f).passed, fam

    def test_catalog_parities_cover_spec(self):
        assert FAMILY_CATALOG["T1"][0] == "any"
        assert {f for f in FAMILY_IDS if FAMILY_CATALOG[f][0] == "odd"} == {
            "T2", "C2", "T3a", "T3b", "T4a", "T4b", "P1"}
        assert {f for f in FAMILY_IDS if FAMILY_CATALOG[f][0] == "even"} == {
            "T5a", "T5b", "T6", "T7a", "T7b", "T7c", "P2"}


class TestAgreement:
    def test_sampling_deterministic(self):
        a = [random_trinomial(2, random.Random(9)).terms for _ in range(1)]
        b = [random_trinomial(2, random.Random(9)).terms for _ in range(1)]
        assert a == b

    @pytest.mark.parametrize("k", [1, 2])
    def test_small_agreement_run(self, k):
        rep = oracle_agreement_report(k, samples=100, seed=7)
        assert rep.passed
        assert rep.counts == {"samples": 100, "agreements": 100}
        assert "seed=7" in rep.notes
