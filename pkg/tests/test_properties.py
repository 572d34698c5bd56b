"""Property checkers: transitivity, unanimity, NI, WNI, ND, dictatorship.

Fixture facts exercised here:
    - the reversing dictator separates NI from Unanimity,
    - a two-block constitution {a,b} > {c} fails NI, WNI, and ND at k=3,
    - two blocks of two at k=4 keep ND while WNI fails,
    - three-voter pairwise majority fails transitivity at k=3.
"""

import random

import pytest

from arrowcheck import (
    CapExceededError,
    IiaConstitution,
    PairwiseTable,
    Profile,
    all_pairs,
    all_profiles,
    eval_iia,
    pairwise_vector,
)
from arrowcheck.characterization import BlockDescriptor, BlockStructure, generate
from arrowcheck.properties import (
    check_dictator,
    check_iia,
    check_nd,
    check_ni,
    check_transitivity,
    check_unanimity,
    check_wni,
    dictator_of,
)

from oracle import brute_nd, brute_ni, brute_transitive, brute_wni


def two_block_fixture(n=2):
    """{0,1} always above {2}, with a free non-constant pair table."""
    return generate(
        BlockStructure(
            n,
            (
                BlockDescriptor(frozenset({0, 1}), "free-pair", table=PairwiseTable.projection(n, 0)),
                BlockDescriptor(frozenset({2}), "singleton"),
            ),
        )
    )


def two_blocks_of_two_fixture(n=2):
    """{0,1} always above {2,3}; both internal pairs non-constant."""
    return generate(
        BlockStructure(
            n,
            (
                BlockDescriptor(frozenset({0, 1}), "free-pair", table=PairwiseTable.projection(n, 0)),
                BlockDescriptor(frozenset({2, 3}), "free-pair", table=PairwiseTable.projection(n, 1)),
            ),
        )
    )


class TestTransitivity:
    def test_dictator_holds_over_all_36_profiles(self):
        report = check_transitivity(IiaConstitution.dictator(2, 3, 0))
        assert report.holds and report.witness is None

    def test_majority_fails_with_a_cyclic_witness(self):
        C = IiaConstitution.majority(3, 3)
        report = check_transitivity(C)
        assert not report.holds
        assert eval_iia(C, report.witness).find_three_cycle() is not None
        # the classic Condorcet profile is cyclic too
        classic = Profile.from_text("0>1>2,1>2>0,2>0>1")
        assert eval_iia(C, classic).find_three_cycle() is not None

    def test_constant_holds(self):
        from arrowcheck import Ranking

        assert check_transitivity(IiaConstitution.constant(2, Ranking((2, 0, 1)))).holds

    def test_cap_exceeded_is_a_resource_error(self):
        with pytest.raises(CapExceededError):
            check_transitivity(IiaConstitution.majority(3, 3), cap=100)


class TestUnanimity:
    def test_identity_dictator_holds(self):
        assert check_unanimity(IiaConstitution.dictator(2, 3, 1)).holds

    def test_reversing_dictator_fails(self):
        report = check_unanimity(IiaConstitution.dictator(2, 3, 1, -1))
        assert not report.holds
        (a, b), profile = report.witness
        # everyone ranks a over b on the witness profile, society does not
        C = IiaConstitution.dictator(2, 3, 1, -1)
        assert all(s == 1 for s in pairwise_vector(profile, a, b))
        assert not eval_iia(C, profile).prefers(a, b)

    def test_majority_holds(self):
        assert check_unanimity(IiaConstitution.majority(3, 3)).holds


class TestNonImposition:
    def test_reversing_dictator_achieves_every_order(self):
        report = check_ni(IiaConstitution.dictator(2, 3, 0, -1))
        assert report.holds
        C = IiaConstitution.dictator(2, 3, 0, -1)
        for ranking, profile in report.witness.items():
            assert eval_iia(C, profile).to_ranking() == ranking

    def test_constant_fails(self):
        from arrowcheck import Ranking

        report = check_ni(IiaConstitution.constant(2, Ranking((0, 1, 2))))
        assert not report.holds

    def test_two_block_fails_because_the_bottom_never_tops(self):
        report = check_ni(two_block_fixture())
        assert not report.holds
        missing = report.witness
        assert missing.order.index(2) != 2  # any order not pinning 2 to the bottom is missing


class TestWeakNonImposition:
    def test_any_dictator_holds(self):
        for sign in (1, -1):
            report = check_wni(IiaConstitution.dictator(2, 3, 1, sign))
            assert report.holds
            C = IiaConstitution.dictator(2, 3, 1, sign)
            for (a, b), profile in report.witness.items():
                assert eval_iia(C, profile).prefers(a, b)

    def test_two_block_fails(self):
        report = check_wni(two_block_fixture())
        assert not report.holds
        a, b = report.witness
        assert (a, b) == (2, 0)  # 2 is never ranked above 0

    def test_constant_fails(self):
        from arrowcheck import Ranking

        assert not check_wni(IiaConstitution.constant(2, Ranking((0, 1, 2)))).holds


class TestNonDegeneracy:
    def test_dictator_holds(self):
        assert check_nd(IiaConstitution.dictator(2, 3, 0)).holds

    def test_two_block_fails_with_a_pinned_bottom(self):
        report = check_nd(two_block_fixture())
        assert not report.holds
        assert report.witness == (2, "bottom")

    def test_two_blocks_of_two_separates_nd_from_wni(self):
        C = two_blocks_of_two_fixture()
        assert check_nd(C).holds
        assert not check_wni(C).holds


class TestDictatorOf:
    def test_identity_forms(self):
        assert dictator_of(IiaConstitution.dictator(3, 3, 2)) == (2, 1)
        assert dictator_of(IiaConstitution.dictator(2, 4, 0, -1)) == (0, -1)
        assert dictator_of(IiaConstitution.majority(3, 3)) is None

    def test_dictator_implies_transitive_and_ni(self):
        for voter in range(2):
            for sign in (1, -1):
                C = IiaConstitution.dictator(2, 3, voter, sign)
                assert dictator_of(C) is not None
                assert check_transitivity(C).holds
                assert check_ni(C).holds

    def test_report_wrapper(self):
        report = check_dictator(IiaConstitution.dictator(2, 3, 1, -1))
        assert report.holds and report.witness == (1, -1)


class TestAgainstBruteForce:
    def test_checkers_match_definitions_on_random_constitutions(self):
        rng = random.Random(9)
        for _ in range(40):
            C = IiaConstitution(
                2, 3, tuple(PairwiseTable(2, rng.randrange(16)) for _ in all_pairs(3))
            )
            assert check_transitivity(C).holds == brute_transitive(C)
            assert check_ni(C).holds == brute_ni(C)
            assert check_wni(C).holds == brute_wni(C)
            assert check_nd(C).holds == brute_nd(C)

    def test_implication_chain_on_random_constitutions(self):
        rng = random.Random(10)
        for _ in range(60):
            C = IiaConstitution(
                2, 3, tuple(PairwiseTable(2, rng.randrange(16)) for _ in all_pairs(3))
            )
            unanimity = check_unanimity(C).holds
            ni = check_ni(C).holds
            wni = check_wni(C).holds
            nd = check_nd(C).holds
            assert not unanimity or ni
            assert not ni or wni
            assert not wni or nd


class TestReportSurface:
    def test_iia_is_structural_for_table_constitutions(self):
        assert check_iia(IiaConstitution.majority(3, 3)).holds

    def test_serialization_includes_profile_witnesses(self):
        report = check_transitivity(IiaConstitution.majority(3, 3))
        text = report.to_text()
        assert "property = transitivity" in text
        assert "holds = false" in text
        assert report.witness.to_text() in text
