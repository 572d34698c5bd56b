"""Rankings, profiles, sign packing, the triple codec, and tournaments."""

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrowcheck import (
    NonRealizableTripleError,
    Profile,
    Ranking,
    Tournament,
    all_pairs,
    all_profiles,
    all_rankings,
    pack_signs,
    pair_index,
    pairwise_vector,
    pref_sign,
    profile_from_index,
    profile_index,
    ranking_from_index,
    ranking_index,
    restrict_profile,
    restrict_ranking,
    reverse,
    triple_decode,
    triple_encode,
    unpack_signs,
)

rankings_st = st.integers(1, 6).flatmap(
    lambda k: st.permutations(list(range(k))).map(lambda p: Ranking(tuple(p)))
)


class TestRanking:
    def test_rank_is_one_based_inverse(self):
        r = Ranking((2, 0, 1))
        assert r.rank == (2, 3, 1)
        assert r.prefers(2, 0) and not r.prefers(1, 2)

    def test_rejects_non_permutations(self):
        with pytest.raises(ValueError):
            Ranking((0, 0, 1))
        with pytest.raises(ValueError):
            Ranking((1, 2, 3))

    def test_text_round_trip(self):
        assert Ranking.from_text("2>0>1").order == (2, 0, 1)
        assert Ranking((2, 0, 1)).to_text() == "2>0>1"
        with pytest.raises(ValueError):
            Ranking.from_text("2>x>1")

    @given(rankings_st)
    def test_reverse_is_an_involution(self, r):
        assert reverse(reverse(r)) == r

    def test_reverse_examples(self):
        assert reverse(Ranking((0, 1, 2))) == Ranking((2, 1, 0))
        assert reverse(Ranking((0,))) == Ranking((0,))


class TestPrefSign:
    def test_direct_reads(self):
        r = Ranking((0, 1, 2))  # a>b>c
        assert pref_sign(r, 0, 1) == 1
        assert pref_sign(r, 2, 0) == -1
        assert pref_sign(Ranking((1, 2, 0)), 1, 0) == 1

    def test_rejects_bad_arguments(self):
        r = Ranking((0, 1, 2))
        with pytest.raises(ValueError):
            pref_sign(r, 1, 1)
        with pytest.raises(ValueError):
            pref_sign(r, 0, 3)

    @given(rankings_st)
    def test_antisymmetry(self, r):
        for a, b in all_pairs(r.k):
            assert pref_sign(r, a, b) == -pref_sign(r, b, a)

    @given(rankings_st)
    def test_reversal_negates_every_sign(self, r):
        rev = reverse(r)
        for a, b in all_pairs(r.k):
            assert pref_sign(rev, a, b) == -pref_sign(r, a, b)


class TestPairwiseVector:
    def test_componentwise(self):
        p = Profile((Ranking((0, 1, 2)), Ranking((2, 1, 0))))
        assert pairwise_vector(p, 0, 1) == (1, -1)
        p2 = Profile((Ranking((0, 1, 2)), Ranking((0, 1, 2))))
        assert pairwise_vector(p2, 0, 1) == (1, 1)
        assert pairwise_vector(Profile((Ranking((1, 0, 2)),)), 0, 1) == (-1,)

    def test_rejects_equal_alternatives(self):
        p = Profile((Ranking((0, 1, 2)),))
        with pytest.raises(ValueError):
            pairwise_vector(p, 2, 2)

    def test_reversing_every_voter_negates_the_vector(self):
        for p in all_profiles(2, 3):
            flipped = Profile(tuple(reverse(r) for r in p.voters))
            for a, b in all_pairs(3):
                original = pairwise_vector(p, a, b)
                assert pairwise_vector(flipped, a, b) == tuple(-s for s in original)


class TestTripleCodec:
    def test_encode_reads_off_the_order(self):
        assert triple_encode(Ranking((0, 1, 2)), 0, 1, 2) == (1, 1, -1)
        assert triple_encode(Ranking((2, 1, 0)), 0, 1, 2) == (-1, -1, 1)

    def test_encode_never_constant_and_covers_all_six(self):
        seen = set()
        for r in all_rankings(3):
            t = triple_encode(r, 0, 1, 2)
            assert t not in ((1, 1, 1), (-1, -1, -1))
            seen.add(t)
        assert len(seen) == 6

    def test_decode_inverts_encode(self):
        for r in all_rankings(3):
            t = triple_encode(r, 0, 1, 2)
            assert triple_decode(*t) == r.order

    def test_decode_examples(self):
        assert triple_decode(1, 1, -1) == (0, 1, 2)
        assert triple_decode(-1, 1, 1) == (1, 2, 0)  # b>c>a

    def test_decode_rejects_constant_triples(self):
        with pytest.raises(NonRealizableTripleError):
            triple_decode(1, 1, 1)
        with pytest.raises(NonRealizableTripleError):
            triple_decode(-1, -1, -1)

    @given(rankings_st.filter(lambda r: r.k >= 3), st.data())
    def test_codec_round_trip_on_arbitrary_triples(self, r, data):
        a, b, c = data.draw(
            st.permutations(list(range(r.k))).map(lambda p: tuple(p[:3]))
        )
        s = triple_encode(r, a, b, c)
        top, mid, bottom = triple_decode(*s, a, b, c)
        assert r.prefers(top, mid) and r.prefers(mid, bottom)


class TestLehmerIndex:
    def test_identity_and_reversal_are_the_extremes(self):
        for k in range(1, 6):
            assert ranking_index(Ranking(tuple(range(k)))) == 0
            assert ranking_index(Ranking(tuple(reversed(range(k))))) == math.factorial(k) - 1

    def test_round_trip_k4_exhaustive(self):
        for index in range(24):
            assert ranking_index(ranking_from_index(index, 4)) == index

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_enumeration_matches_index_order(self, k):
        for index, r in enumerate(all_rankings(k)):
            assert ranking_index(r) == index
            assert ranking_from_index(index, k) == r

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ranking_from_index(6, 3)
        with pytest.raises(ValueError):
            ranking_from_index(-1, 3)


class TestSignPacking:
    @given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=10))
    def test_round_trip(self, signs):
        signs = tuple(signs)
        assert unpack_signs(pack_signs(signs), len(signs)) == signs

    def test_voter_zero_is_least_significant(self):
        assert pack_signs((1, -1, -1)) == 1
        assert pack_signs((-1, -1, 1)) == 4

    def test_rejects_bad_signs(self):
        with pytest.raises(ValueError):
            pack_signs((1, 0))


class TestProfiles:
    def test_requires_consistent_dimensions(self):
        with pytest.raises(ValueError):
            Profile(())
        with pytest.raises(ValueError):
            Profile((Ranking((0, 1)), Ranking((0, 1, 2))))

    def test_index_round_trip(self):
        profiles = list(all_profiles(2, 3))
        assert len(profiles) == 36
        for index, p in enumerate(profiles):
            assert profile_index(p) == index
            assert profile_from_index(index, 2, 3) == p

    def test_text_round_trip(self):
        p = Profile.from_text("0>1>2, 1>2>0")
        assert p.to_text() == "0>1>2,1>2>0"


class TestRestrict:
    def test_restrict_ranking_reindexes(self):
        r = Ranking((3, 1, 0, 2))
        assert restrict_ranking(r, {1, 3}) == Ranking((1, 0))
        assert restrict_ranking(r, {0, 1, 2, 3}) == r

    def test_restrict_profile(self):
        p = Profile.from_text("2>0>1,0>2>1")
        assert restrict_profile(p, {0, 2}).to_text() == "1>0,0>1"

    def test_rejects_bad_subsets(self):
        with pytest.raises(ValueError):
            restrict_ranking(Ranking((0, 1)), set())
        with pytest.raises(ValueError):
            restrict_ranking(Ranking((0, 1)), {0, 5})


class TestTournament:
    def test_from_ranking_round_trip(self):
        for r in all_rankings(4):
            t = Tournament.from_ranking(r)
            assert t.is_transitive
            assert t.to_ranking() == r

    def test_cycle_detection_matches_linearity_for_all_k4_tournaments(self):
        # A complete antisymmetric relation is cycle-free iff it is an order.
        for bits in range(1 << 6):
            signs = tuple(1 if (bits >> i) & 1 else -1 for i in range(6))
            t = Tournament(4, signs)
            wins = sorted(t.wins(a) for a in range(4))
            assert (t.find_three_cycle() is None) == (wins == [0, 1, 2, 3])

    def test_to_ranking_rejects_cycles(self):
        cyclic = Tournament(3, (1, -1, 1))  # 0>1, 2>0, 1>2
        assert cyclic.find_three_cycle() == (0, 1, 2)
        with pytest.raises(ValueError):
            cyclic.to_ranking()

    def test_pair_index_is_lexicographic(self):
        for k in range(2, 6):
            for index, (a, b) in enumerate(all_pairs(k)):
                assert pair_index(a, b, k) == index
