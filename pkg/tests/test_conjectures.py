"""Conjecture sweeps, the trace/norm profile chain, conditional families,
and the search harness."""

import pytest

from niho_perm.errors import GuardExceededError, UsageError
from niho_perm.conjectures import (ProfileMismatchError, SearchHit,
                                   conjecture1_check, conjecture2_check,
                                   is_square, profile_of, profile_sweep_report,
                                   proposition_check, quartic_obstruction_report,
                                   search_problem_instances,
                                   subfield_stability_report, _search_chunk)
from niho_perm.field import make_field, tower_field, trace
from niho_perm.trinomials import (induced_mu_map,
                                  is_permutation_exhaustive, theorem_family)
from niho_perm.unity import build_map, maps_agree_report, unity_group


class TestConjecture1:
    def test_k1_map_table(self):
        # x*((x^2-x+2)/(x^2+x+2))^2 on GF(5) is 0,4,3,2,1 at 0..4
        f = make_field(1)
        got = {}
        for c in range(5):
            x = f.scalar(c)
            num = x * x - x + 2
            den = x * x + x + 2
            got[c] = (x * (num / den) ** 2).digits[0]
        assert got == {0: 0, 1: 4, 2: 3, 3: 2, 4: 1}

    def test_square_class_example(self):
        # 1 is a square and maps to 4 = 2^2, still a square
        f = make_field(1)
        assert is_square(f.scalar(1))
        assert is_square(f.scalar(4))
        assert not is_square(f.scalar(2))

    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_verified_range(self, k):
        rep = conjecture1_check(k)
        assert rep.passed
        assert rep.counts["elements"] == 5 ** k
        assert rep.counts["square_class_stable"] == 1

    def test_even_k_rejected(self):
        with pytest.raises(UsageError, match="odd"):
            conjecture1_check(2)

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            conjecture1_check(9)


class TestConjecture2:
    @pytest.mark.parametrize("k", [2, 4])
    def test_verified_range(self, k):
        rep = conjecture2_check(k)
        assert rep.passed
        assert rep.counts["points"] == 5 ** k + 1

    def test_odd_k_rejected(self):
        with pytest.raises(UsageError, match="even"):
            conjecture2_check(3)

    def test_value_at_one(self):
        # -1*((1-2)/(1+2))^2 = 1: well defined, no pole
        f = tower_field(2)
        assert build_map("conj2_map", 2).eval_at(f.one) == f.one


class TestProfileChain:
    def test_worked_instance(self):
        f = tower_field(1)
        w = f.generator
        p = profile_of(w)
        assert (p.a, p.b) == (f.one, f.scalar(2))
        assert (p.alpha, p.beta) == (f.scalar(2), f.scalar(3))
        assert (p.r, p.gamma) == (f.scalar(3), f.scalar(3))

    def test_alpha_zero_when_trace_zero(self):
        f = tower_field(1)
        pts = [x for x in f.elements()
               if trace(x).is_zero and not x.is_zero]
        assert pts
        for x in pts:
            assert profile_of(x).alpha.is_zero

    def test_subfield_point_rejected(self):
        f = tower_field(1)
        with pytest.raises(UsageError, match="outside"):
            profile_of(f.one)

    def test_even_k_rejected(self):
        f = tower_field(2)
        with pytest.raises(UsageError, match="odd"):
            profile_of(f.generator)

    def test_unknown_family(self):
        f = tower_field(1)
        with pytest.raises(UsageError):
            profile_of(f.generator, family="T1")

    @pytest.mark.parametrize("k", [1, 3])
    def test_sweep(self, k):
        rep = profile_sweep_report(k)
        assert rep.passed
        assert rep.counts["points"] == 5 ** (2 * k) - 5 ** k

    def test_scalar_sweep_matches_batch_at_k1(self):
        # every off-subfield point passes the scalar chain without raising
        f = tower_field(1)
        from niho_perm.field import in_subfield
        count = 0
        for x in f.elements():
            if x.is_zero or in_subfield(x):
                continue
            profile_of(x)
            count += 1
        assert count == 20


class TestPropositions:
    @pytest.mark.parametrize("k", [1, 3])
    def test_p1(self, k):
        rep = proposition_check("P1", k)
        assert rep.passed

    def test_p1_coincides_with_t1_at_k1(self):
        assert theorem_family("P1", 1).terms == theorem_family("T1", 1).terms

    @pytest.mark.parametrize("k", [2])
    def test_p2(self, k):
        rep = proposition_check("P2", k)
        assert rep.passed

    def test_p2_exponents_at_k2(self):
        f = theorem_family("P2", 2)
        assert f.exponents == (1, 241, 433)
        assert is_permutation_exhaustive(f).passed

    @pytest.mark.parametrize("k", [1, 3])
    def test_stability_fact(self, k):
        assert subfield_stability_report(k).passed

    @pytest.mark.parametrize("k", [1, 3])
    def test_quartic_obstruction(self, k):
        rep = quartic_obstruction_report(k)
        assert rep.passed
        assert "gcd(13, q+1) = 1" in rep.notes[0]

    @pytest.mark.parametrize("k", [1, 3])
    def test_circle_bridge(self, k):
        # the induced circle map of P1 equals its closed form pointwise
        f = theorem_family("P1", k)
        group = unity_group(f.field)
        rep = maps_agree_report(induced_mu_map(f), build_map("p1_bridge", k),
                                group, "mu")
        assert rep.passed

    def test_parity_guards(self):
        with pytest.raises(UsageError):
            proposition_check("P1", 2)
        with pytest.raises(UsageError):
            proposition_check("P2", 3)
        with pytest.raises(UsageError):
            proposition_check("P9", 1)


class TestSearch:
    def test_sum_zero_contains_known_pair(self):
        hits = search_problem_instances(1, "sum_zero", "+-")
        assert SearchHit(2, 4, "+", "-") in hits
        # 2 + 4 = 6 = 0 mod 6, so the pair lands in sum_zero, not sum_half
        half = search_problem_instances(1, "sum_half", "+-")
        assert SearchHit(2, 4, "+", "-") not in half

    def test_every_hit_passes_the_oracle(self):
        for h in search_problem_instances(1, "none", "all"):
            sign = {"+": 1, "-": -1}
            f_terms = [(1, 0), (sign[h.sign1], h.s), (sign[h.sign2], h.t)]
            from niho_perm.trinomials import build_trinomial
            assert is_permutation_exhaustive(
                build_trinomial(1, f_terms)).passed, h

    def test_canonical_order(self):
        hits = search_problem_instances(2, "none", "all")
        assert hits == sorted(hits)

    def test_empty_result_is_a_list(self):
        # restricting the s-range between hits exercises the empty path
        hits = _search_chunk((2, 5, 6, "sum_zero", ((1, -1),), True))
        assert hits == []

    def test_worker_count_does_not_change_output(self):
        a = search_problem_instances(2, "none", "all", threads=1)
        b = search_problem_instances(2, "none", "all", threads=3)
        assert a == b

    def test_scalar_path_matches_table_path(self):
        fast = _search_chunk((1, 0, 6, "none", ((1, -1), (-1, -1)), True))
        slow = _search_chunk((1, 0, 6, "none", ((1, -1), (-1, -1)), False))
        assert fast == slow

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            search_problem_instances(5, "none", "all")

    def test_bad_inputs(self):
        with pytest.raises(UsageError):
            search_problem_instances(1, "sum", "+-")
        with pytest.raises(UsageError):
            search_problem_instances(1, "none", "+?")

    def test_mismatch_raises_profile_error_type_exists(self):
        assert issubclass(ProfileMismatchError, Exception)
