import random

import pytest

from cubeconsensus import (
    GuardExceededError,
    Profile,
    Vertex,
    anti_median,
    center,
    column_sums,
    condorcet_ties,
    leq,
    lp_consensus,
    maj,
    mean,
    median,
    min_vertex,
    norm,
    ones,
    translate,
    xor,
    zero,
)
from cubeconsensus.axioms import enumerate_profiles, oracle_argopt, random_profile


def prof(*strings):
    return Profile.from_bitstrings(strings)


def small_profiles(n_max=3, k_max=3):
    for n in range(1, n_max + 1):
        yield from enumerate_profiles(n, k_max)


class TestMajorityMinority:
    def test_unanimous(self):
        v = Vertex.from_bitstring("1010")
        assert maj(Profile([v, v, v])) == v
        assert min_vertex(Profile([v, v, v])) == v.complement()

    def test_by_hand(self):
        p = prof("110", "101", "011")
        assert maj(p) == Vertex.from_bitstring("111")
        assert min_vertex(p) == zero(3)

    def test_ties_earn_zero(self):
        p = prof("10", "01")
        assert maj(p) == zero(2)
        assert min_vertex(p) == zero(2)


class TestCondorcetTies:
    def test_odd_length_never_ties(self):
        rng = random.Random(23)
        for _ in range(50):
            k = rng.choice([1, 3, 5, 7])
            p = random_profile(rng, rng.randint(1, 10), k)
            assert condorcet_ties(p).cs == 0

    def test_by_hand(self):
        assert condorcet_ties(prof("00", "11")).coordinates == frozenset({1, 2})
        assert condorcet_ties(prof("11", "10")).coordinates == frozenset({2})


class TestMedian:
    def test_by_hand(self):
        out = median(prof("110", "101", "011"))
        assert out.sorted_winners() == ["111"]
        assert out.score == 3

    def test_full_tie(self):
        out = median(prof("00", "11"))
        assert len(out.winners) == 4
        assert out.score == 2

    def test_singleton(self):
        v = Vertex.from_bitstring("0110")
        out = median(Profile([v]))
        assert out.winners == frozenset([v])
        assert out.score == 0

    def test_matches_oracle_exhaustive_small(self):
        for pi in small_profiles():
            assert median(pi).winners == oracle_argopt(
                pi, "status", "minimize"
            ).winners

    def test_cardinality_law(self):
        rng = random.Random(31)
        for _ in range(100):
            p = random_profile(rng, rng.randint(1, 10), rng.randint(1, 8))
            assert len(median(p).winners) == 2 ** condorcet_ties(p).cs

    def test_majority_membership(self):
        rng = random.Random(37)
        for _ in range(100):
            p = random_profile(rng, rng.randint(1, 10), rng.randint(1, 8))
            assert maj(p) in median(p).winners

    def test_sandwich_structure(self):
        # every winner sits between the majority vertex and the vertex that
        # sets all tied coordinates to 1
        rng = random.Random(41)
        for _ in range(100):
            p = random_profile(rng, rng.randint(1, 8), rng.randint(1, 6))
            w = maj(p)
            upper_bits = w.bits
            for j in condorcet_ties(p).coordinates:
                upper_bits |= 1 << (j - 1)
            upper = Vertex(p.n, upper_bits)
            for a in median(p).winners:
                assert leq(w, a) and leq(a, upper)

    def test_translation_equivariance(self):
        for pi in small_profiles(2, 2):
            n = pi.n
            for vb in range(1 << n):
                v = Vertex(n, vb)
                moved = median(translate(pi, v))
                base = median(pi)
                assert moved.winners == frozenset(xor(w, v) for w in base.winners)
                assert moved.score == base.score

    def test_zero_membership_iff_column_sums_small(self):
        for pi in small_profiles():
            stats = column_sums(pi)
            in_med = zero(pi.n) in median(pi).winners
            assert in_med == all(2 * c <= stats.k for c in stats.sums)

    def test_expansion_guard(self):
        p = Profile([zero(24), ones(24)])  # all 24 coordinates tie
        with pytest.raises(GuardExceededError):
            median(p)
        small = Profile([zero(5), ones(5)])
        with pytest.raises(GuardExceededError):
            median(small, max_tie_expansion=3)
        assert len(median(small, max_tie_expansion=5).winners) == 32

    def test_winner_order_deterministic(self):
        a = median(prof("0011", "1100")).sorted_winners()
        b = median(prof("0011", "1100")).sorted_winners()
        assert a == b == sorted(a)


class TestAntiMedian:
    def test_singleton(self):
        v = Vertex.from_bitstring("0110")
        out = anti_median(Profile([v]))
        assert out.winners == frozenset([v.complement()])
        assert out.score == 4

    def test_by_hand(self):
        out = anti_median(prof("110", "101", "011"))
        assert out.sorted_winners() == ["000"]
        assert out.score == 6

    def test_full_tie(self):
        out = anti_median(prof("00", "11"))
        assert len(out.winners) == 4
        assert out.score == 2

    def test_matches_oracle_exhaustive_small(self):
        for pi in small_profiles():
            assert anti_median(pi).winners == oracle_argopt(
                pi, "status", "maximize"
            ).winners

    def test_minority_membership_and_cardinality(self):
        rng = random.Random(43)
        for _ in range(100):
            p = random_profile(rng, rng.randint(1, 10), rng.randint(1, 8))
            out = anti_median(p)
            assert min_vertex(p) in out.winners
            assert len(out.winners) == 2 ** condorcet_ties(p).cs


class TestCenter:
    def test_singleton(self):
        v = Vertex.from_bitstring("101")
        out = center(Profile([v]))
        assert out.winners == frozenset([v])
        assert out.score == 0

    def test_antipodal_pair(self):
        out = center(prof("000", "111"))
        assert out.score == 2
        assert out.winners == frozenset(
            Vertex(3, b) for b in range(8) if norm(Vertex(3, b)) in (1, 2)
        )

    def test_matches_oracle_exhaustive_small(self):
        for pi in small_profiles():
            assert center(pi).winners == oracle_argopt(
                pi, "eccentricity", "minimize"
            ).winners

    def test_translation_coherence(self):
        for pi in small_profiles(3, 2):
            n = pi.n
            for vb in range(1 << n):
                v = Vertex(n, vb)
                assert center(translate(pi, v)).winners == frozenset(
                    xor(w, v) for w in center(pi).winners
                )

    def test_zero_membership_lemma(self):
        from cubeconsensus import profile_norm

        for pi in small_profiles():
            n = pi.n
            in_cen = zero(n) in center(pi).winners
            rhs = all(
                profile_norm(pi) <= profile_norm(translate(pi, Vertex(n, ub)))
                for ub in range(1 << n)
            )
            assert in_cen == rhs

    def test_scan_guard(self):
        p = Profile([zero(30)])
        with pytest.raises(GuardExceededError):
            center(p, max_scan_n=20)

    def test_workers_agree(self):
        rng = random.Random(47)
        for _ in range(10):
            p = random_profile(rng, rng.randint(2, 9), rng.randint(1, 6))
            assert center(p, workers=3).winners == center(p).winners


class TestLpConsensus:
    def test_singleton_any_p(self):
        v = Vertex.from_bitstring("0101")
        for p in (1, 2, 2.5, 7):
            out = lp_consensus(Profile([v]), p)
            assert out.winners == frozenset([v])
            assert out.score == 0

    def test_q2_square_case(self):
        # distances from 01/10 are {1,1} (score 2); from 00/11 they are
        # {0,2} (score 4), so the mean picks the two mixed vertices
        out = lp_consensus(prof("00", "11"), 2)
        assert out.sorted_winners() == ["01", "10"]
        assert out.score == 2

    def test_p1_equals_median_exhaustive(self):
        for pi in small_profiles(4, 3):
            assert lp_consensus(pi, 1).winners == median(pi).winners

    def test_matches_oracle_exhaustive_small(self):
        for p in (1, 2, 3, 2.5):
            for pi in small_profiles(3, 2):
                assert lp_consensus(pi, p).winners == oracle_argopt(
                    pi, "lp_status", "minimize", p=p
                ).winners

    def test_mean_alias(self):
        pi = prof("00", "11")
        assert mean(pi).winners == lp_consensus(pi, 2).winners
        assert mean(pi).p == 2.0

    def test_rejects_bad_exponent(self):
        with pytest.raises(ValueError):
            lp_consensus(prof("01"), 0.5)

    def test_zero_membership_lemma(self):
        from cubeconsensus import char_p

        for p in (1, 2, 3, 2.5):
            tol = 0 if float(p).is_integer() else 1e-9
            for pi in small_profiles():
                n = pi.n
                in_lp = zero(n) in lp_consensus(pi, p).winners
                base = char_p(pi, p)
                rhs = all(
                    base <= char_p(translate(pi, Vertex(n, ab)), p) + tol
                    for ab in range(1 << n)
                )
                assert in_lp == rhs

    def test_workers_agree(self):
        rng = random.Random(53)
        for _ in range(10):
            p = random_profile(rng, rng.randint(2, 9), rng.randint(1, 6))
            assert (
                lp_consensus(p, 2.5, workers=4).winners
                == lp_consensus(p, 2.5).winners
            )


class TestRandomOracleEquivalence:
    def test_500_random_instances(self):
        rng = random.Random(59)
        for _ in range(500):
            n, k = rng.randint(1, 12), rng.randint(1, 9)
            pi = random_profile(rng, n, k)
            assert median(pi).winners == oracle_argopt(
                pi, "status", "minimize"
            ).winners
            assert anti_median(pi).winners == oracle_argopt(
                pi, "status", "maximize"
            ).winners
