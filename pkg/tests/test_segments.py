"""Segment and multisegment basics: construction, orders, surgeries, filters."""

import pytest
from collections import Counter
from hypothesis import given, strategies as st

from mseg.errors import EmptyMultisegmentError, EmptySegmentError
from mseg.segments import (
    CuspidalPoint,
    Multisegment,
    Segment,
    is_ladder,
    linked,
    max_end,
    ms_add,
    ms_dual,
    ms_filter,
    ms_new,
    precedes,
    seg_new,
    sli_sufficient,
    split_mx,
    supp,
    surgery,
    total_cmp,
)


def S(b, e, line="0"):
    return Segment(line, b, e)


def M(*segs):
    return Multisegment(tuple(segs))


segments = st.builds(
    lambda b, n: S(b, b + n), st.integers(-6, 6), st.integers(0, 5)
)
multisegments = st.lists(segments, max_size=6).map(lambda ss: M(*ss))


class TestSegment:
    def test_construction(self):
        s = seg_new("0", 1, 2)
        assert (s.b, s.e) == (1, 2)
        assert len(seg_new("0", 0, 0)) == 1

    def test_empty_rejected(self):
        with pytest.raises(EmptySegmentError):
            seg_new("0", 3, 1)

    def test_point_membership(self):
        s = S(0, 2)
        assert s.contains(CuspidalPoint("0", 1))
        assert not s.contains(CuspidalPoint("0", 3))
        assert not s.contains(CuspidalPoint("a", 1))

    def test_surgeries(self):
        assert surgery(S(0, 2), "right_trunc") == S(0, 1)
        assert surgery(S(0, 0), "left_trunc") is None
        assert surgery(S(0, 0), "right_trunc") is None
        assert surgery(S(1, 2), "dual") == S(-2, -1)
        assert surgery(S(0, 1), "right_ext") == S(0, 2)
        assert surgery(S(0, 1), "left_ext") == S(-1, 1)
        assert surgery(S(0, 1), "shift_right") == S(1, 2)
        assert surgery(S(0, 1), "shift_left") == S(-1, 0)

    def test_unknown_surgery(self):
        with pytest.raises(ValueError):
            surgery(S(0, 1), "nope")


class TestPrecedes:
    def test_examples(self):
        assert precedes(S(0, 1), S(1, 2))
        assert not precedes(S(0, 0), S(0, 1))
        assert not precedes(S(0, 2), S(1, 1))
        assert not precedes(S(0, 1, "a"), S(1, 2, "b"))

    def test_irreflexive(self):
        assert not precedes(S(0, 1), S(0, 1))

    @given(segments, segments)
    def test_precedes_implies_less(self, d, d2):
        if precedes(d, d2):
            assert total_cmp(d, d2) == -1

    def test_shift_equivalences_exhaustive(self):
        # both shifted forms agree with the containment form on a small box
        box = [S(b, e) for b in range(-3, 4) for e in range(b, 4)]
        for d in box:
            for d2 in box:
                lhs = precedes(d.shift(-1), d2)
                mid = precedes(d, d2.shift(1))
                rhs = d.contains(d2.begin_point()) and d2.contains(d.end_point())
                assert lhs == mid == rhs


class TestTotalOrder:
    def test_examples(self):
        assert total_cmp(S(0, 1), S(1, 1)) == -1  # superset with equal ends
        assert total_cmp(S(0, 1), S(1, 2)) == -1
        assert total_cmp(S(0, 1), S(0, 1)) == 0

    def test_equal_end_containment(self):
        # with equal ends, smaller means containing
        assert S(0, 3) <= S(1, 3) and S(1, 3) >= S(0, 3)

    def test_lines_compared_first(self):
        assert S(5, 9, "a") < S(0, 0, "b")


class TestMultisegment:
    def test_canonical_order(self):
        m = M(S(0, 1), S(1, 2))
        assert m.segs == (S(1, 2), S(0, 1))

    def test_supp(self):
        got = (M(S(0, 1)) + M(S(1, 2))).supp()
        want = Counter(
            {
                CuspidalPoint("0", 0): 1,
                CuspidalPoint("0", 1): 2,
                CuspidalPoint("0", 2): 1,
            }
        )
        assert got == want

    def test_dual(self):
        assert M(S(1, 2), S(-1, 0)).dual() == M(S(0, 1), S(-2, -1))

    def test_max_end(self):
        assert M(S(0, 1), S(1, 2)).max_end() == CuspidalPoint("0", 2)
        with pytest.raises(EmptyMultisegmentError):
            M().max_end()

    def test_split_mx(self):
        mx, nmx = split_mx(M(S(1, 2), S(0, 2), S(0, 1)))
        assert mx == M(S(1, 2), S(0, 2)) and nmx == M(S(0, 1))
        assert split_mx(M(S(0, 0))) == (M(S(0, 0)), M())
        assert split_mx(M()) == (M(), M())

    @given(multisegments)
    def test_split_reassembles(self, m):
        mx, nmx = split_mx(m)
        assert mx + nmx == m
        if nmx:
            assert all(s.end_point() != m.max_end() for s in nmx)

    @given(multisegments)
    def test_dual_involution(self, m):
        assert m.dual().dual() == m
        assert m.dual().supp() == Counter(
            {CuspidalPoint(pt.line, -pt.pos): c for pt, c in m.supp().items()}
        )

    @given(multisegments, multisegments)
    def test_add_commutes(self, a, b):
        assert a + b == b + a

    @given(multisegments, multisegments, multisegments)
    def test_add_associates(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(multisegments)
    def test_canonical_never_precedes_forward(self, m):
        for i in range(1, len(m) + 1):
            for j in range(i + 1, len(m) + 1):
                assert not precedes(m.seg(i), m.seg(j))


class TestLadder:
    def test_examples(self):
        assert is_ladder(M(S(1, 2), S(0, 1)))
        assert not is_ladder(M(S(0, 1), S(0, 2)))
        assert is_ladder(M(S(0, 0)))
        assert is_ladder(M())

    @given(multisegments)
    def test_dual_preserves_ladders(self, m):
        if is_ladder(m):
            assert is_ladder(m.dual())


class TestSli:
    def test_examples(self):
        assert sli_sufficient(M(S(1, 2)), M(S(0, 1)))
        assert not sli_sufficient(M(S(0, 1)), M(S(1, 2)))
        assert sli_sufficient(M(), M(S(1, 2), S(0, 1)))


class TestFilter:
    def test_examples(self):
        m = M(S(1, 2), S(0, 1))
        assert ms_filter(m, "ge_seg", S(1, 1)) == M(S(1, 2))
        assert ms_filter(m, "end_in", S(1, 1)) == M(S(0, 1))
        assert ms_filter(m, "begin_in", S(0, 0)) == M(S(0, 1))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ms_filter(M(), "weird", S(0, 0))


class TestFunctionalAliases:
    def test_construction_and_arithmetic(self):
        m = ms_new([S(0, 1), S(1, 2)])
        assert m == M(S(0, 1), S(1, 2))
        assert ms_add(m, M(S(0, 0))) == m + M(S(0, 0))
        assert ms_dual(m) == m.dual()
        assert supp(m) == m.supp()
        assert max_end(m) == m.max_end()
        assert (m - M(S(0, 1))) == M(S(1, 2))

    def test_linked_symmetric(self):
        assert linked(S(0, 1), S(1, 2)) and linked(S(1, 2), S(0, 1))
        assert not linked(S(0, 1), S(0, 1))
