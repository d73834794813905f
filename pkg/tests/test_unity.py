"""Circle enumeration, the map catalog, permutation checks and claims."""

import math

import pytest

from niho_perm.errors import ResidueError, UsageError
from niho_perm.field import make_field, tower_field
from niho_perm.unity import (ClosedFormMap, OMEGA_SPECIALIZATIONS,
                             build_map, check_circle_claim, eval_map,
                             eval_on_unity, is_permutation_of,
                             maps_agree_report, mu_check_report,
                             reciprocal_identity_report, unity_group,
                             unity_permutation_report)


@pytest.fixture(scope="module")
def mu6():
    return unity_group(tower_field(1))


class TestEnumeration:
    def test_size(self, mu6):
        assert mu6.n == 6
        assert len(mu6.elements) == 6

    def test_power_order_listing(self, mu6):
        listed = [mu6.element(i).digits for i in range(6)]
        assert listed == [(1, 0), (2, 2), (1, 2), (4, 0), (3, 3), (4, 3)]

    def test_omega_split(self, mu6):
        plus = {mu6.element(i).digits for i in mu6.omega_plus}
        minus = {mu6.element(i).digits for i in mu6.omega_minus}
        assert plus == {(1, 0), (1, 2), (3, 3)}
        assert minus == {(-mu6.element(i)).digits for i in mu6.omega_plus}
        assert plus | minus == {mu6.element(i).digits for i in range(6)}
        assert not plus & minus

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_omega_plus_two_characterizations(self, k):
        g = unity_group(tower_field(k))
        field = g.field
        squares = {field.kernel.mul(h, h) for h in g.elements}
        by_power = {h for h in g.elements
                    if field.kernel.pow(h, g.n // 2) == field.kernel.one}
        assert squares == by_power
        assert squares == {g.handle(i) for i in g.omega_plus}

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_zeta_order_and_minus_one(self, k):
        g = unity_group(tower_field(k))
        kern = g.field.kernel
        assert kern.pow(g.zeta, g.n) == kern.one
        assert kern.pow(g.zeta, g.n // 2) == kern.neg(kern.one)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_half_power_is_sign(self, k):
        g = unity_group(tower_field(k))
        field = g.field
        one, minus_one = field.one, -field.one
        for i in range(g.n):
            x = g.element(i)
            up = x ** (g.n // 2)
            down = x ** (-(g.n // 2))
            assert up in (one, minus_one)
            assert up == down

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_plus_minus_two_off_circle(self, k):
        field = tower_field(k)
        two = field.scalar(2)
        assert two ** (field.q + 1) != field.one
        assert (-two) ** (field.q + 1) != field.one
        if k <= 3:
            g = unity_group(field)
            assert not g.contains_handle(two.handle)
            assert not g.contains_handle((-two).handle)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_gcd_facts(self, k):
        q = 5 ** k
        if k % 2 == 1:
            assert 6 % math.gcd(q + 1, 12) == 0
            assert math.gcd(13, q + 1) == 1
        else:
            assert math.gcd(3, q + 1) == 1

    def test_group_cached(self):
        f = tower_field(2)
        assert unity_group(f) is unity_group(f)

    def test_needs_tower(self):
        with pytest.raises(UsageError):
            unity_group(make_field(3))


class TestMapEvaluation:
    def test_g1_at_one(self, mu6):
        g1 = build_map("g1", 1)
        assert eval_map(g1, mu6.field.one) == mu6.field.one

    def test_half_f_values(self, mu6):
        f = build_map("half_f", 1)
        one = mu6.field.one
        assert eval_map(f, one) == one
        assert eval_map(f, -one) == -one

    def test_scalar_matches_batch(self, mu6):
        for name in ("g1", "g2", "g3", "g5", "half_f", "half_g"):
            map_ = build_map(name, 1)
            vals, bad = eval_on_unity(map_, mu6, range(6))
            assert bad is None
            for i in range(6):
                scalar = eval_map(map_, mu6.element(i))
                assert scalar.handle == int(vals[i])

    def test_scalar_matches_batch_poly_kernel(self):
        g = unity_group(tower_field(5))
        map_ = build_map("g1", 5)
        idx = list(range(0, g.n, 97))
        vals, bad = eval_on_unity(map_, g, idx)
        assert bad is None
        for pos, i in enumerate(idx):
            assert eval_map(map_, g.element(i)).handle == vals[pos]

    def test_unknown_map(self):
        with pytest.raises(UsageError, match="g1"):
            build_map("g99", 1)

    def test_g10_needs_even_k(self):
        with pytest.raises(ResidueError):
            build_map("g10", 1)
        assert build_map("g10", 2)


class TestPermutationChecker:
    def test_identity_passes(self, mu6):
        rep = is_permutation_of(mu6.members(range(6)), lambda x: x)
        assert rep.passed

    def test_square_map_fails_with_collision(self, mu6):
        rep = is_permutation_of(mu6.members(range(6)), lambda x: x * x)
        assert not rep.passed
        assert rep.witness["type"] == "collision"
        # replay: both witnesses square to the same value
        x1 = mu6.field.from_csv(rep.witness["x1"])
        x2 = mu6.field.from_csv(rep.witness["x2"])
        assert x1 * x1 == x2 * x2

    def test_escape_detected(self, mu6):
        rep = is_permutation_of(mu6.members(range(6)), lambda x: x + 1)
        assert not rep.passed
        assert rep.witness["type"] == "escape"

    def test_pole_reported_not_raised(self, mu6):
        bad = ClosedFormMap(name="polar", sign=1, pre_exp=0,
                            num=((1, 0),), den=((1, 1), (4, 0)), outer=1)
        rep = is_permutation_of(mu6.members(range(6)), bad)
        assert not rep.passed
        assert rep.witness["type"] == "pole"
        assert rep.witness["x"] == "1,0"

    def test_pole_in_batch_path(self, mu6):
        bad = ClosedFormMap(name="polar", sign=1, pre_exp=0,
                            num=((1, 0),), den=((1, 1), (4, 0)), outer=1)
        rep = unity_permutation_report(bad, mu6, "mu")
        assert not rep.passed
        assert rep.witness["type"] == "pole"

    def test_empty_domain_rejected(self):
        with pytest.raises(UsageError):
            is_permutation_of([], lambda x: x)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_g1_permutes_circle(self, k):
        rep = mu_check_report("g1", k)
        assert rep.passed
        assert rep.counts["points"] == 5 ** k + 1


class TestClaims:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_circle_claim(self, k):
        assert check_circle_claim("L3", k).passed

    @pytest.mark.parametrize("k", [1, 3])
    def test_halves_odd(self, k):
        rep = check_circle_claim("L4", k)
        assert rep.passed
        assert rep.counts["checks"] == 2

    @pytest.mark.parametrize("k", [2, 4])
    def test_halves_even(self, k):
        assert check_circle_claim("L5", k).passed

    def test_parity_guard(self):
        with pytest.raises(UsageError, match="odd"):
            check_circle_claim("L4", 2)
        with pytest.raises(UsageError, match="even"):
            check_circle_claim("halves-even", 3)

    def test_unknown_claim(self):
        with pytest.raises(UsageError):
            check_circle_claim("L9", 1)


class TestStructure:
    @pytest.mark.parametrize("k,pairs", [
        (1, [("g1", "g2"), ("g3", "g4"), ("g5", "g6")]),
        (2, [("g1", "g2"), ("g7", "g8")]),
        (3, [("g1", "g2"), ("g3", "g4"), ("g5", "g6")]),
    ])
    def test_reciprocal_identities(self, k, pairs):
        for a, b in pairs:
            rep = reciprocal_identity_report(a, b, k)
            assert rep.passed, (a, b, k)

    @pytest.mark.parametrize("k", [1, 3])
    def test_omega_specializations_odd(self, k):
        g = unity_group(tower_field(k))
        for name in ("g1", "g3", "g5"):
            spec = OMEGA_SPECIALIZATIONS[name]
            for dom, closed_name in spec.items():
                rep = maps_agree_report(build_map(name, k),
                                        build_map(closed_name, k), g, dom)
                assert rep.passed, (name, dom, k)

    @pytest.mark.parametrize("k", [2, 4])
    def test_omega_specializations_even(self, k):
        g = unity_group(tower_field(k))
        for name in ("g1", "g7", "g9"):
            spec = OMEGA_SPECIALIZATIONS[name]
            for dom, closed_name in spec.items():
                rep = maps_agree_report(build_map(name, k),
                                        build_map(closed_name, k), g, dom)
                assert rep.passed, (name, dom, k)

    @pytest.mark.parametrize("k", [1, 2])
    def test_half_map_image_containment(self, k):
        # the claim checks assert containment; make it explicit once
        g = unity_group(tower_field(k))
        fmap = build_map("half_f", k)
        dom = "omega_plus" if k % 2 == 1 else "omega_minus"
        members = {g.handle(i) for i in g.domain_indices(dom)}
        for i in g.domain_indices(dom):
            assert eval_map(fmap, g.element(i)).handle in members

    def test_zero_witness_of_vanishing_h(self, mu6):
        from niho_perm.unity import PowerFormMap
        # 1 + y^2 + y^4 vanishes at zeta on the 6-circle
        pf = PowerFormMap(name="vanishing", h_terms=((1, 0), (1, 2), (1, 4)))
        rep = unity_permutation_report(pf, mu6, "mu")
        assert not rep.passed
        assert rep.witness["type"] == "zero"
        assert rep.witness["x"] == "2,2"
