import math
import random

import pytest

from conftest import brute_force_count_eig, direct_two_model_eig
from oedkit.coins import COIN_MODELS, CoinExperiment, all_sequences, mirror
from oedkit.distributions import FiniteDistribution, normalize
from oedkit.engine import (
    AllZeroLikelihoodError,
    EmptyResponseSpaceError,
    LengthMismatchError,
    OutcomePrior,
    UnsupportedModelCountError,
    actual_information_gain,
    eig_curve,
    eig_factorized_two_model,
    eig_two_model_from_response_probs,
    expected_information_gain,
    model_posterior,
    mutual_information,
    rank_experiments,
    softmax_choice,
)
from oedkit.models import Model, ModelSpace, groupify


def lifted_space(*names, weights=None):
    singles = [COIN_MODELS[n] for n in names]
    space = (
        ModelSpace.uniform(singles)
        if weights is None
        else ModelSpace.with_weights(singles, weights)
    )
    return ModelSpace(tuple(groupify(m) for m in space.models), space.prior)


def constant_space(*p_values):
    models = []
    for i, p in enumerate(p_values):
        dist = FiniteDistribution.from_probs([("H", p), ("T", 1.0 - p)])
        models.append(Model(name=f"m{i}", predict=lambda x, d=dist: d))
    return ModelSpace.uniform(models)


FB = lifted_space("fair", "bias")
X1 = CoinExperiment(n=1, seq="HHHH")


class TestModelPosterior:
    def test_symmetric_likelihoods(self):
        space = constant_space(0.4, 0.4)
        post = model_posterior(space, None, "H")
        assert post.prob("m0") == pytest.approx(0.5, abs=1e-15)

    def test_hhhh_heads(self):
        post = model_posterior(FB, X1, 1)
        assert post.prob("fair") == pytest.approx(3 / 8, abs=1e-12)
        assert post.prob("bias") == pytest.approx(5 / 8, abs=1e-12)

    def test_hhhh_tails(self):
        post = model_posterior(FB, X1, 0)
        assert post.prob("fair") == pytest.approx(3 / 4, abs=1e-12)
        assert post.prob("bias") == pytest.approx(1 / 4, abs=1e-12)

    def test_respects_model_prior(self):
        space = lifted_space("fair", "bias", weights=[3.0, 1.0])
        post = model_posterior(space, X1, 1)
        # prior odds 3:1 times likelihood odds (1/2):(5/6)
        expected_fair = (0.75 * 0.5) / (0.75 * 0.5 + 0.25 * 5 / 6)
        assert post.prob("fair") == pytest.approx(expected_fair, abs=1e-12)

    def test_all_zero_likelihood(self):
        space = constant_space(1.0, 1.0)
        with pytest.raises(AllZeroLikelihoodError):
            model_posterior(space, None, "T")


class TestExpectedInformationGain:
    def test_worked_example_hhhh(self):
        report = expected_information_gain(FB, X1, OutcomePrior.UNIFORM, range(2))
        oracle = brute_force_count_eig([0.5, 5 / 6], 1, "uniform")
        assert report.eig == pytest.approx(oracle, abs=1e-12)
        assert report.eig == pytest.approx(0.08119798917155008, abs=1e-9)
        contributions = {po.response: po.kl for po in report.per_outcome}
        assert contributions[1] == pytest.approx(0.031583942401963216, abs=1e-9)
        assert contributions[0] == pytest.approx(0.13081203594113694, abs=1e-9)

    def test_identical_predictions_give_zero(self):
        space = constant_space(0.37, 0.37)
        report = expected_information_gain(space, None, OutcomePrior.UNIFORM, ["H", "T"])
        assert report.eig == 0.0

    def test_per_outcome_sums_to_eig(self):
        x = CoinExperiment(n=9, seq="HHTH")
        for prior in (OutcomePrior.UNIFORM, OutcomePrior.PREDICTIVE):
            report = expected_information_gain(FB, x, prior, range(10))
            total = math.fsum(po.probability * po.kl for po in report.per_outcome)
            assert report.eig == pytest.approx(total, abs=1e-9)

    def test_oracle_agreement_many_sizes(self):
        for n in (2, 5, 20):
            x = CoinExperiment(n=n, seq="HHHT")
            for kind, name in ((OutcomePrior.UNIFORM, "uniform"), (OutcomePrior.PREDICTIVE, "predictive")):
                report = expected_information_gain(FB, x, kind, range(n + 1))
                oracle = brute_force_count_eig([0.5, bias_p("HHHT")], n, name)
                assert report.eig == pytest.approx(oracle, abs=1e-11)

    def test_impossible_outcomes_flagged_under_uniform(self):
        space = constant_space(1.0, 1.0)
        report = expected_information_gain(space, None, OutcomePrior.UNIFORM, ["H", "T"])
        flagged = {po.response: po.impossible for po in report.per_outcome}
        assert flagged == {"H": False, "T": True}
        assert report.eig == 0.0
        # the uniform normalizer still spans the full declared space
        assert [po.probability for po in report.per_outcome] == [0.5, 0.5]

    def test_empty_response_space(self):
        with pytest.raises(EmptyResponseSpaceError):
            expected_information_gain(FB, X1, OutcomePrior.UNIFORM, [])

    def test_eig_nonnegative_randomized(self):
        rng = random.Random(23)
        for _ in range(200):
            ps = [rng.random() for _ in range(rng.randint(2, 4))]
            space = constant_space(*ps)
            for kind in OutcomePrior:
                report = expected_information_gain(space, None, kind, ["H", "T"])
                assert report.eig >= 0.0


def bias_p(seq):
    return COIN_MODELS["bias"].predict(seq).prob("H")


class TestRankExperiments:
    def rank(self, space, n, outcome=OutcomePrior.UNIFORM, seqs=None):
        xs = [CoinExperiment(n=n, seq=s) for s in (seqs or all_sequences())]
        return rank_experiments(space, xs, outcome, lambda x: range(x.n + 1))

    def test_ranks_are_permutation(self):
        reports = self.rank(FB, 20)
        assert sorted(r.rank for r in reports) == list(range(1, 17))
        # descending up to the 1e-12 tie resolution used for ranking
        assert all(reports[i].eig >= reports[i + 1].eig - 1e-12 for i in range(15))

    def test_tie_break_is_lexicographic(self):
        reports = self.rank(FB, 20)
        assert (reports[0].key, reports[1].key) == ("HHHH", "TTTT")

    def test_input_permutation_invariance(self):
        rng = random.Random(1)
        seqs = all_sequences()
        baseline = [(r.rank, r.key, r.eig) for r in self.rank(FB, 12)]
        for _ in range(5):
            shuffled = seqs[:]
            rng.shuffle(shuffled)
            again = [(r.rank, r.key, r.eig) for r in self.rank(FB, 12, seqs=shuffled)]
            assert again == baseline

    def test_empty_input(self):
        with pytest.raises(ValueError):
            rank_experiments(FB, [], OutcomePrior.UNIFORM, lambda x: range(2))


class TestEigCurve:
    def test_n1_matches_unlifted(self):
        singles = ModelSpace.uniform([COIN_MODELS["fair"], COIN_MODELS["bias"]])
        curve = eig_curve(singles, "HHHH", [1], OutcomePrior.UNIFORM)
        unlifted = expected_information_gain(singles, "HHHH", OutcomePrior.UNIFORM, ["H", "T"])
        assert abs(curve[0][1] - unlifted.eig) <= 1e-12

    def test_zero_information_experiment_stays_zero(self):
        singles = ModelSpace.uniform([COIN_MODELS["fair"], COIN_MODELS["bias"]])
        for n, eig in eig_curve(singles, "HTHT", range(1, 31), OutcomePrior.UNIFORM):
            assert eig == pytest.approx(0.0, abs=1e-12)

    def test_three_model_crossing_window(self):
        singles = ModelSpace.uniform([COIN_MODELS[m] for m in ("fair", "bias", "markov")])
        a = dict(eig_curve(singles, "HTHT", range(1, 31), OutcomePrior.UNIFORM))
        b = dict(eig_curve(singles, "HHHT", range(1, 31), OutcomePrior.UNIFORM))
        diffs = [a[n] - b[n] for n in range(1, 31)]
        changes = [
            n for n, (d0, d1) in enumerate(zip(diffs, diffs[1:]), start=1) if (d0 > 0) != (d1 > 0)
        ]
        assert len(changes) == 1
        assert 10 <= changes[0] <= 14

    def test_predictive_curves_nondecreasing(self):
        # empirical check for the shipped comparisons, not a general theorem
        for names in (("fair", "bias"), ("bias", "markov"), ("fair", "bias", "markov")):
            singles = ModelSpace.uniform([COIN_MODELS[m] for m in names])
            for seq in all_sequences():
                values = [
                    eig for _, eig in eig_curve(singles, seq, range(1, 31), OutcomePrior.PREDICTIVE)
                ]
                assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


class TestActualInformationGain:
    def test_equal_likelihood_gives_zero(self):
        space = constant_space(0.6, 0.6)
        assert actual_information_gain(space, None, "H") == 0.0

    def test_hhhh_head(self):
        assert actual_information_gain(FB, X1, 1) == pytest.approx(
            0.031583942401963216, abs=1e-9
        )

    def test_hhhh_tail(self):
        assert actual_information_gain(FB, X1, 0) == pytest.approx(
            0.13081203594113694, abs=1e-9
        )

    def test_impossible_observation(self):
        space = constant_space(1.0, 1.0)
        with pytest.raises(AllZeroLikelihoodError):
            actual_information_gain(space, None, "T")


UNIFORM2 = normalize([("m1", 1.0), ("m2", 1.0)])


class TestFactorizedFastPath:
    def test_single_item_equals_two_outcome_eig(self):
        for outcome, name in ((OutcomePrior.PREDICTIVE, "predictive"), (OutcomePrior.UNIFORM, "uniform")):
            fast = eig_factorized_two_model([0.3], [0.8], UNIFORM2, outcome)
            oracle = direct_two_model_eig([0.3], [0.8], (0.5, 0.5), name)
            assert fast == pytest.approx(oracle, abs=1e-12)

    def test_identical_items_give_zero(self):
        ps = [0.2, 0.5, 0.9]
        for outcome in OutcomePrior:
            assert eig_factorized_two_model(ps, ps, UNIFORM2, outcome) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_oracle_agreement_randomized(self):
        rng = random.Random(99)
        for _ in range(100):
            k = rng.randint(1, 10)
            p1 = [rng.uniform(0.02, 0.98) for _ in range(k)]
            p2 = [rng.uniform(0.02, 0.98) for _ in range(k)]
            w = rng.uniform(0.1, 0.9)
            prior = normalize([("m1", w), ("m2", 1.0 - w)])
            outcome = rng.choice([OutcomePrior.PREDICTIVE, OutcomePrior.UNIFORM])
            fast = eig_factorized_two_model(p1, p2, prior, outcome)
            oracle = direct_two_model_eig(p1, p2, (w, 1.0 - w), outcome.value)
            assert fast == pytest.approx(oracle, abs=1e-9)

    def test_point_mass_items(self):
        # one item deterministic under both models, one one-sided
        for p1, p2 in ([[1.0, 0.5], [1.0, 0.5]], [[1.0, 0.3], [0.0, 0.3]], [[0.0, 1.0], [1.0, 0.0]]):
            for outcome in OutcomePrior:
                fast = eig_factorized_two_model(p1, p2, UNIFORM2, outcome)
                oracle = direct_two_model_eig(p1, p2, (0.5, 0.5), outcome.value)
                assert fast == pytest.approx(oracle, abs=1e-12)

    def test_group_lifted_tables(self):
        # n > 1 equals the brute-force count-vector enumeration
        import itertools

        p1 = [0.3, 0.7]
        p2 = [0.5, 0.6]
        n = 3
        from oedkit.distributions import binomial_pmf

        total = {OutcomePrior.PREDICTIVE: 0.0, OutcomePrior.UNIFORM: 0.0}
        for counts in itertools.product(range(n + 1), repeat=2):
            lik1 = math.prod(binomial_pmf(n, p, c) for p, c in zip(p1, counts))
            lik2 = math.prod(binomial_pmf(n, p, c) for p, c in zip(p2, counts))
            z = 0.5 * lik1 + 0.5 * lik2
            if z == 0:
                continue
            q1, q2 = 0.5 * lik1 / z, 0.5 * lik2 / z
            kl = sum(q * math.log(q / 0.5) for q in (q1, q2) if q > 0)
            total[OutcomePrior.PREDICTIVE] += z * kl
            total[OutcomePrior.UNIFORM] += kl / (n + 1) ** 2
        for outcome in OutcomePrior:
            fast = eig_factorized_two_model(p1, p2, UNIFORM2, outcome, n=n)
            assert fast == pytest.approx(total[outcome], abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            eig_factorized_two_model([0.5], [0.5, 0.6], UNIFORM2, OutcomePrior.PREDICTIVE)
        with pytest.raises(LengthMismatchError):
            eig_factorized_two_model([], [], UNIFORM2, OutcomePrior.PREDICTIVE)

    def test_rejects_three_model_prior(self):
        prior3 = normalize([("a", 1.0), ("b", 1.0), ("c", 1.0)])
        with pytest.raises(UnsupportedModelCountError):
            eig_factorized_two_model([0.5], [0.6], prior3, OutcomePrior.PREDICTIVE)

    def test_vector_direct_helper_agrees(self):
        p1 = [0.2, 0.6, 0.9]
        p2 = [0.4, 0.4, 0.7]
        import itertools

        import numpy as np

        vecs1, vecs2 = [], []
        for labels in itertools.product((0, 1), repeat=3):
            vecs1.append(math.prod(p if y else 1 - p for y, p in zip(labels, p1)))
            vecs2.append(math.prod(p if y else 1 - p for y, p in zip(labels, p2)))
        for outcome in OutcomePrior:
            direct = eig_two_model_from_response_probs(
                np.array(vecs1), np.array(vecs2), UNIFORM2, outcome
            )
            fast = eig_factorized_two_model(p1, p2, UNIFORM2, outcome)
            assert direct == pytest.approx(fast, abs=1e-12)


class TestMutualInformationIdentity:
    def test_predictive_eig_equals_mi(self):
        for names in (("fair", "bias"), ("bias", "markov"), ("fair", "bias", "markov")):
            space = lifted_space(*names)
            for seq in ("HHHH", "HTHT", "HHTT"):
                x = CoinExperiment(n=6, seq=seq)
                eig = expected_information_gain(space, x, OutcomePrior.PREDICTIVE, range(7)).eig
                mi = mutual_information(space, x, range(7))
                assert eig == pytest.approx(mi, abs=1e-9)


class TestSoftmaxChoice:
    def test_seeded_choice_is_deterministic(self):
        xs = [CoinExperiment(n=5, seq=s) for s in all_sequences()]
        reports = rank_experiments(FB, xs, OutcomePrior.UNIFORM, lambda x: range(x.n + 1))
        picks = {softmax_choice(reports, 0.05, random.Random(4)).key for _ in range(3)}
        assert len(picks) == 1

    def test_low_temperature_prefers_argmax(self):
        xs = [CoinExperiment(n=20, seq=s) for s in all_sequences()]
        reports = rank_experiments(FB, xs, OutcomePrior.UNIFORM, lambda x: range(x.n + 1))
        rng = random.Random(0)
        hits = sum(softmax_choice(reports, 1e-3, rng).key in {"HHHH", "TTTT"} for _ in range(50))
        assert hits == 50

    def test_rejects_bad_temperature(self):
        with pytest.raises(ValueError):
            softmax_choice([], temperature=0.0)


class TestMirrorSymmetry:
    def test_eig_invariant_under_relabeling(self):
        for names in (("fair", "bias"), ("bias", "markov"), ("fair", "bias", "markov")):
            space = lifted_space(*names)
            for outcome in OutcomePrior:
                for seq in all_sequences():
                    a = expected_information_gain(
                        space, CoinExperiment(n=20, seq=seq), outcome, range(21)
                    ).eig
                    b = expected_information_gain(
                        space, CoinExperiment(n=20, seq=mirror(seq)), outcome, range(21)
                    ).eig
                    assert a == pytest.approx(b, abs=1e-9)
