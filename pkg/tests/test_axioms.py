import itertools
import json

import pytest

from cubeconsensus import (
    ConsensusFunction,
    Exhaustive,
    InvariantError,
    Profile,
    Randomized,
    Vertex,
    builtin,
    check_agreement,
    check_consistency,
    check_intersection_condition,
    check_maj,
    check_min,
    check_rr,
    check_translation,
    concat,
    enumerate_profiles,
    ones,
    oracle_argopt,
    oracle_function,
    translate,
    verify_theorem1,
    xor,
    zero,
)
from cubeconsensus.axioms import profile_space_size


def prof(*strings):
    return Profile.from_bitstrings(strings)


class TestBuiltins:
    def test_f1_projects_first(self):
        assert builtin("f1")(prof("01", "10", "11")) == frozenset(
            [Vertex.from_bitstring("01")]
        )

    def test_f2_full_vertex_set(self):
        assert len(builtin("f2")(prof("01"))) == 4

    def test_f3_support(self):
        x, y = Vertex.from_bitstring("01"), Vertex.from_bitstring("10")
        assert builtin("f3")(Profile([x, y, x])) == frozenset([x, y])

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin("f4")

    def test_lp_requires_p(self):
        with pytest.raises(ValueError):
            builtin("lp")

    def test_empty_output_breaks_invariant(self):
        broken = ConsensusFunction("broken", lambda pi: frozenset())
        with pytest.raises(InvariantError):
            broken(prof("0"))

    def test_wrong_dimension_breaks_invariant(self):
        broken = ConsensusFunction("broken", lambda pi: frozenset([zero(pi.n + 1)]))
        with pytest.raises(InvariantError):
            broken(prof("0"))


class TestOracle:
    def test_status_extremes_on_singleton(self):
        v = Vertex.from_bitstring("0110")
        pi = Profile([v])
        assert oracle_argopt(pi, "status", "minimize").winners == frozenset([v])
        assert oracle_argopt(pi, "status", "maximize").winners == frozenset(
            [v.complement()]
        )

    def test_eccentricity_antipodal(self):
        out = oracle_argopt(prof("000", "111"), "eccentricity", "minimize")
        assert len(out.winners) == 6
        assert out.score == 2

    def test_guard(self):
        from cubeconsensus import GuardExceededError

        with pytest.raises(GuardExceededError):
            oracle_argopt(Profile([zero(30)]), "status", "minimize", guard=25)

    def test_rejects_unknown_objective(self):
        with pytest.raises(ValueError):
            oracle_argopt(prof("0"), "distance", "minimize")


class TestProfileEnumeration:
    @pytest.mark.parametrize("n,k_max", [(1, 3), (2, 3), (3, 3)])
    def test_honest_counts(self, n, k_max):
        count = sum(1 for _ in enumerate_profiles(n, k_max))
        assert count == profile_space_size(n, k_max)
        assert count == sum((2**n) ** k for k in range(1, k_max + 1))

    def test_n3_count_is_584(self):
        assert profile_space_size(3, 3) == 584


class TestTranslationCheck:
    def test_med_holds(self):
        assert check_translation(builtin("med"), Exhaustive(3, 3)).result == "holds"

    def test_f1_holds(self):
        assert check_translation(builtin("f1"), Exhaustive(3, 2)).result == "holds"

    def test_constant_zero_fails_with_witness(self):
        const0 = ConsensusFunction("const0", lambda pi: frozenset([zero(pi.n)]))
        v = check_translation(const0, Exhaustive(2, 2))
        assert v.result == "fails"
        assert v.witness is not None
        # replay: the witness must be a genuine violation
        pi = Profile.from_bitstrings(v.witness["profile"])
        shift = Vertex.from_bitstring(v.witness["v"])
        expected = frozenset(xor(w, shift) for w in const0(pi))
        assert expected != const0(translate(pi, shift))

    def test_randomized_mode_reports_seed_and_label(self):
        v = check_translation(builtin("med"), Randomized(trials=25, seed=9))
        assert v.result == "holds-within-trials"
        assert v.seed == 9
        assert v.profiles_checked == 25

    def test_randomized_reproducible(self):
        f = builtin("f1")
        a = check_translation(f, Randomized(trials=40, seed=5)).to_dict()
        b = check_translation(builtin("f1"), Randomized(trials=40, seed=5)).to_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_unique_constant_function(self):
        # among all 2^(2^n) - 1 constant functions only the full-set one
        # is translation invariant
        for n in (1, 2):
            full = frozenset(Vertex(n, b) for b in range(1 << n))
            survivors = []
            for r in range(1, (1 << n) + 1):
                for combo in itertools.combinations(range(1 << n), r):
                    out = frozenset(Vertex(n, b) for b in combo)
                    f = ConsensusFunction(f"const{combo}", lambda pi, o=out: o)
                    if check_translation(f, Exhaustive(n, 2, n_min=n)).holds:
                        survivors.append(out)
            assert survivors == [full]


class TestAgreement:
    def test_function_agrees_with_itself(self):
        f = builtin("med")
        v = check_agreement(f, f, zero(2), Exhaustive(2, 2))
        assert v.result == "holds"

    def test_med_agrees_with_oracle_at_zero(self):
        v = check_agreement(
            builtin("med"),
            oracle_function("status", "minimize"),
            zero(3),
            Exhaustive(3, 3),
        )
        assert v.result == "holds"
        assert v.profiles_checked == 584

    def test_f1_f3_disagree_in_q1(self):
        v = check_agreement(builtin("f1"), builtin("f3"), zero(1), Exhaustive(1, 2))
        assert v.result == "fails"
        pi = Profile.from_bitstrings(v.witness["profile"])
        assert (zero(1) in builtin("f1")(pi)) != (zero(1) in builtin("f3")(pi))


class TestTheorem1:
    def test_med_vs_oracle_at_zero(self):
        v = verify_theorem1(
            builtin("med"),
            oracle_function("status", "minimize"),
            zero,
            Exhaustive(3, 3),
        )
        assert v.result == "holds"
        assert v.profiles_checked == 14 + 84 + 584

    def test_lp2_vs_oracle_at_ones(self):
        v = verify_theorem1(
            builtin("lp", p=2),
            oracle_function("lp_status", "minimize", p=2),
            ones,
            Exhaustive(3, 3),
        )
        assert v.result == "holds"

    def test_trivially_equal(self):
        v = verify_theorem1(builtin("cen"), builtin("cen"), zero, Exhaustive(2, 2))
        assert v.result == "holds"

    def test_inapplicable_without_translation(self):
        const0 = ConsensusFunction("const0", lambda pi: frozenset([zero(pi.n)]))
        v = verify_theorem1(const0, builtin("med"), zero, Exhaustive(2, 2))
        assert v.result == "inapplicable"


class TestConsistency:
    def test_f2_holds(self):
        assert check_consistency(builtin("f2"), Exhaustive(2, 2)).result == "holds"

    def test_med_holds_small(self):
        assert check_consistency(builtin("med"), Exhaustive(2, 2)).result == "holds"

    def test_center_fails_with_witness(self):
        v = check_consistency(builtin("cen"), Exhaustive(2, 2))
        assert v.result == "fails"
        pi1 = Profile.from_bitstrings(v.witness["profile1"])
        pi2 = Profile.from_bitstrings(v.witness["profile2"])
        cen = builtin("cen")
        inter = cen(pi1) & cen(pi2)
        assert inter and cen(concat(pi1, pi2)) != inter


class TestMembershipAndRange:
    def test_maj_med_holds(self):
        assert check_maj(builtin("med"), Exhaustive(3, 3)).result == "holds"

    def test_min_am_holds(self):
        assert check_min(builtin("am"), Exhaustive(3, 3)).result == "holds"

    def test_rr_med_and_am_hold(self):
        assert check_rr(builtin("med"), Exhaustive(3, 3)).result == "holds"
        assert check_rr(builtin("am"), Exhaustive(3, 3)).result == "holds"

    def test_rr_f2_fails(self):
        v = check_rr(builtin("f2"), Exhaustive(2, 2))
        assert v.result == "fails"
        assert v.witness["winner_count"] > v.witness["bound"]

    def test_maj_f1_fails(self):
        v = check_maj(builtin("f1"), Exhaustive(2, 2))
        assert v.result == "fails"


class TestIntersectionCondition:
    def test_f2_satisfies_everything(self):
        v = check_intersection_condition(builtin("f2"), 2)
        assert v.result == "holds"
        assert v.witness["intersection"] == ["00", "01", "10", "11"]

    def test_med_fails_intersection(self):
        v = check_intersection_condition(builtin("med"), 2)
        assert v.result == "fails"
        assert v.witness["failed_hypothesis"] == "intersection"

    def test_f3_fails_intersection(self):
        v = check_intersection_condition(builtin("f3"), 2)
        assert v.result == "fails"
        assert v.witness["failed_hypothesis"] == "intersection"


class TestVerdictContract:
    def test_failing_verdict_requires_witness(self):
        from cubeconsensus import AxiomVerdict

        with pytest.raises(InvariantError):
            AxiomVerdict(
                axiom="T", function="x", mode={}, result="fails", witness=None
            )

    def test_serialization_shape(self):
        v = check_rr(builtin("f2"), Exhaustive(1, 1))
        d = v.to_dict()
        assert d["axiom"] == "RR"
        assert d["result"] == "fails"
        assert "witness" in d
        json.dumps(d)  # must be JSON-clean
