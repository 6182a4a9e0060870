import pytest

from loopforge import (
    Autotopism,
    NotSElements,
    ParseError,
    Perm,
    SearchCapExceeded,
    autotopism_group,
    autotopism_inverse,
    autotopism_product,
    automorphism_group,
    cyclic_loop,
    format_isotope_record,
    identity_autotopism,
    isomorphisms,
    parse_isotope_record,
    principal_isotope,
    s_isomorphisms,
    s_loop_context,
    smarandache_principal_isotope,
)

from oracles import (
    brute_autotopisms_pairs,
    brute_autotopisms_triples,
    brute_isomorphisms,
    group_axiom_violation,
)


class TestPrincipalIsotope:
    def test_z4_example(self, z4):
        record = principal_isotope(z4, 1, 2)
        assert record.f == 1 and record.g == 2
        assert record.result.e == z4.table[1][2] == 3
        assert record.result.table == (
            (1, 2, 3, 0),
            (2, 3, 0, 1),
            (3, 0, 1, 2),
            (0, 1, 2, 3),
        )

    def test_identity_parameters_reproduce_the_loop(self, n5):
        record = principal_isotope(n5, 0, 0)
        assert record.result.table == n5.table

    def test_defining_law(self, n5):
        # x' * y' = x * y for x' = x * g, y' = f * y
        f, g = 1, 1
        record = principal_isotope(n5, f, g)
        t = n5.table
        iso = record.result.table
        for x in range(5):
            for y in range(5):
                assert iso[t[x][g]][t[f][y]] == t[x][y]

    def test_round_trip_swaps_parameters(self, z4, n5):
        for L in (z4, n5):
            for f in range(L.n):
                for g in range(L.n):
                    forward = principal_isotope(L, f, g)
                    back = principal_isotope(forward.result, g, f)
                    assert back.result.table == L.table

    def test_rejects_out_of_range(self, z4):
        with pytest.raises(IndexError):
            principal_isotope(z4, 4, 0)
        with pytest.raises(IndexError):
            principal_isotope(z4, 0, -1)


class TestSmarandacheIsotope:
    def test_subgroup_carries_over(self, n5_ctx):
        record, ictx = smarandache_principal_isotope(n5_ctx, 1, 1)
        assert ictx.h.elements == (0, 1)
        assert ictx.loop.table == record.result.table
        assert record.result.e == 0  # 1 * 1 = 0 in the base loop

    def test_rejects_parameters_outside_subgroup(self, z4_ctx):
        with pytest.raises(NotSElements):
            smarandache_principal_isotope(z4_ctx, 1, 2)
        with pytest.raises(NotSElements):
            smarandache_principal_isotope(z4_ctx, 0, 3)


class TestIsotopeRecordText:
    def test_round_trip(self, z4):
        record = principal_isotope(z4, 1, 2)
        text = format_isotope_record(record)
        parsed = parse_isotope_record(text)
        assert parsed.source.table == z4.table
        assert parsed.result.table == record.result.table
        assert (parsed.f, parsed.g) == (1, 2)

    def test_tampered_result_rejected(self, z4):
        record = principal_isotope(z4, 1, 2)
        text = format_isotope_record(record).replace("f=1", "f=3")
        with pytest.raises(ParseError):
            parse_isotope_record(text)

    def test_missing_marker(self, z4):
        from loopforge import format_table

        with pytest.raises(ParseError):
            parse_isotope_record(format_table(z4) * 2)

    def test_bad_marker_fields(self, z4):
        record = principal_isotope(z4, 0, 0)
        text = format_isotope_record(record).replace("f=0 g=0", "f=zero g=0")
        with pytest.raises(ParseError):
            parse_isotope_record(text)


class TestAutotopisms:
    def test_identity_autotopism(self, z4):
        assert identity_autotopism(4).holds_for(z4)

    def test_holds_for_rejects_wrong_triple(self, z4):
        shift = Perm([1, 2, 3, 0])
        ide = Perm(range(4))
        assert not Autotopism(shift, ide, ide).holds_for(z4)
        # U = shift by 1, V = identity, W = shift by 1 works in Z4
        assert Autotopism(shift, ide, shift).holds_for(z4)

    def test_matches_triple_oracle_small(self, z3, z4, klein):
        for L in (z3, z4, klein):
            found = [a.key() for a in autotopism_group(L)]
            assert found == brute_autotopisms_triples(L)

    def test_matches_pair_oracle_n5(self, n5):
        found = [a.key() for a in autotopism_group(n5)]
        assert found == brute_autotopisms_pairs(n5)
        assert len(found) == 12

    def test_sizes_for_abelian_groups(self, z4, klein):
        # for an abelian group: |AUT| = n^2 * |AUM|
        assert len(autotopism_group(z4)) == 16 * 2
        assert len(autotopism_group(klein)) == 16 * 6

    def test_product_and_inverse_stay_autotopisms(self, n5):
        auts = autotopism_group(n5)
        for a in auts[:6]:
            assert autotopism_inverse(a).holds_for(n5)
            for b in auts[:6]:
                assert autotopism_product(a, b).holds_for(n5)

    def test_cap(self, z4):
        with pytest.raises(SearchCapExceeded):
            autotopism_group(z4, cap=3)


class TestIsomorphisms:
    def test_z4_to_own_isotope(self, z4):
        record = principal_isotope(z4, 1, 2)
        found = isomorphisms(z4, record.result)
        assert len(found) == 2
        assert [p.images for p in found] == brute_isomorphisms(z4, record.result)

    def test_z4_not_isomorphic_to_klein(self, z4, klein):
        assert isomorphisms(z4, klein) == []

    def test_degree_mismatch_is_empty(self, z3, z4):
        assert isomorphisms(z3, z4) == []

    def test_matches_oracle(self, z4, z5, klein, n5):
        for L1 in (z4, klein):
            for L2 in (z4, klein):
                got = [p.images for p in isomorphisms(L1, L2)]
                assert got == brute_isomorphisms(L1, L2)
        assert [p.images for p in isomorphisms(n5, n5)] == brute_isomorphisms(n5, n5)

    def test_automorphism_groups(self, z4, z5, klein, n5):
        assert [p.images for p in automorphism_group(z4)] == [(0, 1, 2, 3), (0, 3, 2, 1)]
        assert len(automorphism_group(z5)) == 4
        assert len(automorphism_group(klein)) == 6
        assert [p.images for p in automorphism_group(n5)] == [
            (0, 1, 2, 3, 4),
            (0, 1, 3, 4, 2),
            (0, 1, 4, 2, 3),
        ]

    def test_cap(self, z4):
        with pytest.raises(SearchCapExceeded):
            isomorphisms(z4, z4, cap=2)


class TestSIsomorphisms:
    def test_into_equals_onto_for_equal_sizes(self, n5_ctx):
        record, ictx = smarandache_principal_isotope(n5_ctx, 1, 1)
        into = s_isomorphisms(ictx, n5_ctx)
        onto = s_isomorphisms(ictx, n5_ctx, onto=True)
        assert into == onto

    def test_into_can_exceed_onto(self):
        z8 = cyclic_loop(8)
        small = s_loop_context(z8, [0, 4])
        large = s_loop_context(z8, [0, 2, 4, 6])
        assert len(s_isomorphisms(small, large)) == 4
        assert s_isomorphisms(small, large, onto=True) == []

    def test_filters_by_subgroup_image(self, z4, z4_ctx):
        # both automorphisms of Z4 fix {0, 2} setwise
        assert len(s_isomorphisms(z4_ctx, z4_ctx)) == 2

    def test_group_axioms_of_automorphisms(self, n5):
        assert group_axiom_violation([p.images for p in automorphism_group(n5)]) is None
