import pytest

from loopforge import (
    NoIdentity,
    NotLatin,
    NotSLoop,
    NotSquare,
    ParseError,
    format_table,
    is_subgroup,
    middle_nucleus,
    parse_table,
    s_loop_context,
    s_subgroups,
    subgroup_violation,
    subgroups,
    translations,
    validate_table,
)

from oracles import brute_subgroups


class TestValidation:
    def test_accepts_z4(self, z4):
        assert z4.n == 4
        assert z4.e == 0
        assert z4.associative

    def test_identity_not_at_zero(self, loop_3x3_shifted):
        assert loop_3x3_shifted.e == 2

    def test_n5_is_nonassociative(self, n5):
        assert not n5.associative
        assert n5.e == 0

    def test_rejects_ragged(self):
        with pytest.raises(NotSquare):
            validate_table([[0, 1], [1]])

    def test_rejects_non_integer(self):
        with pytest.raises(NotSquare):
            validate_table([[0, "1"], [1, 0]])
        with pytest.raises(NotSquare):
            validate_table([[0, True], [1, 0]])

    def test_rejects_empty(self):
        with pytest.raises(NotSquare):
            validate_table([])

    def test_rejects_repeated_row_entry(self):
        with pytest.raises(NotLatin):
            validate_table([[0, 1], [1, 1]])

    def test_rejects_repeated_column_entry(self):
        # rows are permutations but column 0 repeats
        with pytest.raises(NotLatin):
            validate_table([[0, 1, 2], [0, 2, 1], [1, 0, 2]])

    def test_rejects_quasigroup_without_identity(self):
        with pytest.raises(NoIdentity):
            validate_table([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


class TestDivision:
    def test_ldiv_solves(self, n5):
        for a in range(5):
            for b in range(5):
                assert n5.table[a][n5.ldiv[a][b]] == b

    def test_rdiv_solves(self, n5):
        for a in range(5):
            for b in range(5):
                assert n5.table[n5.rdiv[b][a]][a] == b


def test_translations_z4(z4):
    left, right = translations(z4, 1)
    assert left.images == (1, 2, 3, 0)
    assert right.images == (1, 2, 3, 0)


def test_translations_n5(n5):
    left, right = translations(n5, 3)
    assert left.images == (3, 4, 1, 2, 0)
    assert right.images == (3, 4, 0, 2, 1)
    with pytest.raises(IndexError):
        translations(n5, 5)


class TestSubgroups:
    def test_z4_subgroups(self, z4):
        assert [h.elements for h in subgroups(z4)] == [(0,), (0, 2), (0, 1, 2, 3)]
        assert [h.elements for h in s_subgroups(z4)] == [(0, 2)]

    def test_klein_subgroups(self, klein):
        assert [h.elements for h in s_subgroups(klein)] == [(0, 1), (0, 2), (0, 3)]

    def test_n5_subgroups(self, n5):
        assert [h.elements for h in s_subgroups(n5)] == [(0, 1)]

    def test_z5_has_no_proper_subgroup(self, z5):
        assert s_subgroups(z5) == []

    def test_matches_powerset_oracle(self, z4, z5, klein, n5, loop_3x3_shifted):
        for L in (z4, z5, klein, n5, loop_3x3_shifted):
            assert [h.elements for h in subgroups(L)] == brute_subgroups(L)

    def test_violation_messages(self, z4):
        assert subgroup_violation(z4, [0, 2]) is None
        assert "closed" in subgroup_violation(z4, [0, 1])
        assert "identity" in subgroup_violation(z4, [1, 3])
        assert "empty" in subgroup_violation(z4, [])
        assert "outside" in subgroup_violation(z4, [0, 9])
        assert is_subgroup(z4, [0, 1, 2, 3])
        assert not is_subgroup(z4, [0, 3])

    def test_nonassociative_subset_rejected(self, n5):
        # {0,1,2,3,4} is the whole loop and fails associativity
        assert "associative" in subgroup_violation(n5, range(5))


class TestMiddleNucleus:
    def test_z4_nucleus_is_everything(self, z4):
        assert middle_nucleus(z4).elements == (0, 1, 2, 3)

    def test_n5_nucleus_is_trivial(self, n5):
        assert middle_nucleus(n5).elements == (0,)

    def test_nucleus_definition(self, n5):
        nuc = set(middle_nucleus(n5).elements)
        t = n5.table
        for g in range(5):
            holds = all(
                t[t[x][g]][y] == t[x][t[g][y]] for x in range(5) for y in range(5)
            )
            assert (g in nuc) == holds


class TestSLoopContext:
    def test_accepts_z4(self, z4):
        ctx = s_loop_context(z4, [0, 2])
        assert ctx.h.elements == (0, 2)
        assert 2 in ctx.h
        assert len(ctx.h) == 2

    def test_rejects_non_subgroup(self, z4):
        with pytest.raises(NotSLoop):
            s_loop_context(z4, [0, 1])

    def test_rejects_trivial_and_full(self, z4):
        with pytest.raises(NotSLoop):
            s_loop_context(z4, [0])
        with pytest.raises(NotSLoop):
            s_loop_context(z4, [0, 1, 2, 3])


class TestTextFormat:
    def test_format_z4(self, z4):
        assert format_table(z4) == "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n"

    def test_round_trip(self, z4, z5, klein, n5, loop_3x3_shifted):
        for L in (z4, z5, klein, n5, loop_3x3_shifted):
            assert parse_table(format_table(L)).table == L.table

    def test_comments_and_blanks_ignored(self):
        text = "# a loop\n\n2\n# table follows\n0 1\n\n1 0\n"
        assert parse_table(text).n == 2

    def test_error_positions(self):
        with pytest.raises(ParseError) as exc:
            parse_table("2\n0 1\n1 x\n")
        assert exc.value.line == 3
        assert exc.value.column == 2
        assert "line 3, column 2" in str(exc.value)

        with pytest.raises(ParseError) as exc:
            parse_table("x\n")
        assert exc.value.line == 1

        with pytest.raises(ParseError) as exc:
            parse_table("2\n0 1\n1 0 0\n")
        assert exc.value.line == 3

    def test_missing_and_extra_rows(self):
        with pytest.raises(ParseError):
            parse_table("3\n0 1 2\n1 2 0\n")
        with pytest.raises(ParseError):
            parse_table("2\n0 1\n1 0\n0 1\n")
        with pytest.raises(ParseError):
            parse_table("")
        with pytest.raises(ParseError):
            parse_table("0\n")

    def test_invalid_table_still_rejected_after_parse(self):
        with pytest.raises(NotLatin):
            parse_table("2\n0 1\n1 1\n")
