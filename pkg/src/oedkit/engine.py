"""Experiment-design engine: posteriors, expected/actual information gain.

For an experiment x, the expected information gain is

    EIG(x) = sum_y p(y; x) * KL( P(M | x, y) || P(M) )

where the outcome prior p(y; x) is either uniform over the declared
response space or the model-mixture predictive distribution. Experiments
are scored exhaustively and ranked; all scoring is deterministic (fixed
summation order, lexicographic tie-breaks) so reports are reproducible
byte for byte.

A convolution fast path computes two-model EIG over factorized response
vectors exactly: the posterior depends on the response only through the
summed per-item log-likelihood ratio, so convolving per-item ratio
distributions replaces the 2**K response sweep.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .distributions import FiniteDistribution, kl_divergence, normalize
from .models import GroupExperiment, ModelSpace, groupify

__all__ = [
    "AllZeroLikelihoodError",
    "ConvolutionLimitError",
    "EmptyResponseSpaceError",
    "LengthMismatchError",
    "UnsupportedModelCountError",
    "OutcomePrior",
    "PerOutcome",
    "DesignReport",
    "model_posterior",
    "expected_information_gain",
    "rank_experiments",
    "eig_curve",
    "actual_information_gain",
    "eig_factorized_two_model",
    "eig_two_model_from_response_probs",
    "mutual_information",
    "softmax_choice",
    "experiment_key",
]

#: EIG values closer than this are treated as tied when ranking, so that
#: float noise between symmetric experiments cannot scramble report order.
RANK_RESOLUTION = 1e-12

#: merge tolerance for the log-likelihood-ratio convolution support
LLR_MERGE_TOL = 1e-9

#: hard cap on the merged LLR support; beyond this the exact convolution
#: would exhaust memory (reached only for group-lifted vector responses
#: with large n, which the shipped analyses never need)
LLR_SUPPORT_LIMIT = 4_000_000


class AllZeroLikelihoodError(ValueError):
    """The observation is impossible under every model in the space."""


class EmptyResponseSpaceError(ValueError):
    """EIG needs a nonempty response space to marginalize over."""


class LengthMismatchError(ValueError):
    """Per-item probability lists must have equal length."""


class UnsupportedModelCountError(ValueError):
    """The factorized fast path handles exactly two models."""


class ConvolutionLimitError(ValueError):
    """The merged LLR support outgrew the in-memory limit."""


class OutcomePrior(enum.Enum):
    """How to weight hypothetical results when averaging KL terms."""

    UNIFORM = "uniform"
    PREDICTIVE = "predictive"

    @classmethod
    def from_string(cls, s: str) -> "OutcomePrior":
        try:
            return cls(s.lower())
        except ValueError:
            raise ValueError(f"unknown outcome prior {s!r}; use 'uniform' or 'predictive'")


@dataclass(frozen=True)
class PerOutcome:
    """One hypothetical result: its outcome weight and KL contribution."""

    response: Any
    probability: float
    kl: float
    impossible: bool = False


@dataclass(frozen=True)
class DesignReport:
    """Scored experiment: EIG in nats plus per-outcome decomposition.

    ``per_outcome`` may be empty when the score came from the factorized
    fast path, where the response space is too large to tabulate.
    """

    experiment: Any
    key: str
    eig: float
    per_outcome: tuple[PerOutcome, ...] = ()
    rank: int | None = None

    def to_json_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"rank": self.rank, "experiment": self.key, "eig_nats": self.eig}
        if self.per_outcome:
            d["per_outcome"] = [
                {
                    "response": list(po.response) if isinstance(po.response, tuple) else po.response,
                    "probability": po.probability,
                    "kl_nats": po.kl,
                    "impossible": po.impossible,
                }
                for po in self.per_outcome
            ]
        return d


def experiment_key(x: Any) -> str:
    """Canonical serialization used for tie-breaking and report columns."""
    if hasattr(x, "canonical_key"):
        return x.canonical_key()
    return str(x)


def _likelihoods(space: ModelSpace, x: Any, y: Any) -> list[float]:
    return [m.likelihood(x, y) for m in space.models]


def model_posterior(space: ModelSpace, x: Any, y: Any) -> FiniteDistribution:
    """P(m | x, y) over model names, by Bayes rule against the space prior.

    Raises:
        AllZeroLikelihoodError: if every model assigns y probability 0.
    """
    liks = _likelihoods(space, x, y)
    weights = [space.prior.prob(m.name) * l for m, l in zip(space.models, liks)]
    if all(w == 0.0 for w in weights):
        raise AllZeroLikelihoodError(
            f"response {y!r} is impossible under every model for experiment {experiment_key(x)!r}"
        )
    return normalize(zip((m.name for m in space.models), weights))


def expected_information_gain(
    space: ModelSpace,
    x: Any,
    outcome_prior: OutcomePrior,
    response_space: Sequence[Any],
) -> DesignReport:
    """Score one experiment by direct enumeration of the response space.

    Responses that no model can produce contribute zero and are flagged;
    under the uniform outcome prior the normalizer still counts them (the
    prior is uniform over the full declared space).
    """
    responses = list(response_space)
    if not responses:
        raise EmptyResponseSpaceError(f"experiment {experiment_key(x)!r}")
    prior = space.prior
    prior_probs = [prior.prob(m.name) for m in space.models]
    names = [m.name for m in space.models]
    uniform_w = 1.0 / len(responses)

    per_outcome: list[PerOutcome] = []
    eig = 0.0
    for y in responses:
        liks = _likelihoods(space, x, y)
        weights = [pp * l for pp, l in zip(prior_probs, liks)]
        z = sum(weights)
        if z == 0.0:
            p_y = uniform_w if outcome_prior is OutcomePrior.UNIFORM else 0.0
            per_outcome.append(PerOutcome(y, p_y, 0.0, impossible=True))
            continue
        posterior = normalize(zip(names, weights))
        kl = kl_divergence(posterior, prior)
        p_y = uniform_w if outcome_prior is OutcomePrior.UNIFORM else z
        per_outcome.append(PerOutcome(y, p_y, kl))
        eig += p_y * kl
    return DesignReport(experiment=x, key=experiment_key(x), eig=eig, per_outcome=tuple(per_outcome))


def rank_experiments(
    space: ModelSpace,
    xs: Sequence[Any],
    outcome_prior: OutcomePrior,
    response_space_for: Callable[[Any], Sequence[Any]],
) -> list[DesignReport]:
    """Score every experiment and sort by EIG descending.

    Ties (EIG equal within RANK_RESOLUTION) break lexicographically on the
    canonical experiment key, so the output is independent of input order.
    """
    if not xs:
        raise ValueError("no experiments to rank")
    reports = [
        expected_information_gain(space, x, outcome_prior, response_space_for(x)) for x in xs
    ]
    return assign_ranks(reports)


def assign_ranks(reports: Iterable[DesignReport]) -> list[DesignReport]:
    """Sort reports by (-EIG, key) with EIG rounded to RANK_RESOLUTION."""
    decorated = sorted(
        reports, key=lambda r: (-round(r.eig / RANK_RESOLUTION) * RANK_RESOLUTION, r.key)
    )
    return [replace(r, rank=i + 1) for i, r in enumerate(decorated)]


def eig_curve(
    single_space: ModelSpace,
    inner: Any,
    n_range: Sequence[int],
    outcome_prior: OutcomePrior,
    success: Any = "H",
) -> list[tuple[int, float]]:
    """EIG of the group-lifted comparison at each sample size in n_range.

    ``single_space`` holds per-participant binary-response models; each n
    lifts them with the i.i.d. linking function and scores over counts 0..n.
    """
    lifted = ModelSpace(
        tuple(groupify(m, success) for m in single_space.models), single_space.prior
    )
    out = []
    for n in n_range:
        x = GroupExperiment(n=n, inner=inner)
        report = expected_information_gain(lifted, x, outcome_prior, range(n + 1))
        out.append((n, report.eig))
    return out


def actual_information_gain(space: ModelSpace, x: Any, y_observed: Any) -> float:
    """Realized KL from prior to posterior after observing y."""
    return kl_divergence(model_posterior(space, x, y_observed), space.prior)


def mutual_information(space: ModelSpace, x: Any, response_space: Sequence[Any]) -> float:
    """I(M; Y | x) computed directly from the joint, for cross-checks.

    Under the predictive outcome prior the EIG equals this quantity.
    """
    responses = list(response_space)
    prior_probs = [space.prior.prob(m.name) for m in space.models]
    marginal = []
    liks_by_y = []
    for y in responses:
        liks = _likelihoods(space, x, y)
        liks_by_y.append(liks)
        marginal.append(sum(pp * l for pp, l in zip(prior_probs, liks)))
    total = 0.0
    for liks, p_y in zip(liks_by_y, marginal):
        if p_y == 0.0:
            continue
        for pp, l in zip(prior_probs, liks):
            if pp > 0.0 and l > 0.0:
                total += pp * l * math.log(l / p_y)
    return total


def eig_two_model_from_response_probs(
    probs1: Sequence[float],
    probs2: Sequence[float],
    prior: FiniteDistribution,
    outcome_prior: OutcomePrior,
) -> float:
    """EIG for two models given their full response-probability vectors.

    The vectors index a common (implicit) response space; entry order is
    irrelevant to the result. Used for non-factorizable models whose
    response distributions are cheaper to build as arrays than as tables.
    prior entry 1 belongs to probs1 via the prior's canonical support
    order (sorted model names).
    """
    if len(prior) != 2:
        raise UnsupportedModelCountError(f"need exactly 2 models, prior has {len(prior)}")
    p1 = np.asarray(probs1, dtype=np.float64)
    p2 = np.asarray(probs2, dtype=np.float64)
    if p1.shape != p2.shape:
        raise LengthMismatchError(f"response vectors differ: {p1.shape} vs {p2.shape}")
    prior1, prior2 = prior.probs
    a = prior1 * p1
    b = prior2 * p2
    z = a + b
    keep = z > 0.0
    a, b, z = a[keep], b[keep], z[keep]
    q1 = a / z
    q2 = b / z
    with np.errstate(divide="ignore", invalid="ignore"):
        kl = np.where(q1 > 0.0, q1 * np.log(q1 / prior1), 0.0) + np.where(
            q2 > 0.0, q2 * np.log(q2 / prior2), 0.0
        )
    if outcome_prior is OutcomePrior.PREDICTIVE:
        return float(np.sum(z * kl))
    return float(np.sum(kl) / len(p1))


def softmax_choice(
    reports: Sequence[DesignReport],
    temperature: float = 1.0,
    rng: random.Random | None = None,
) -> DesignReport:
    """Sample one experiment with probability proportional to exp(EIG/T).

    Optional stochastic alternative to the deterministic argmax; no core
    path depends on it.
    """
    if temperature <= 0:
        raise ValueError("temperature must be positive")
    if not reports:
        raise ValueError("no reports to sample from")
    rng = rng if rng is not None else random.Random()
    top = max(r.eig for r in reports)
    weights = [math.exp((r.eig - top) / temperature) for r in reports]
    return rng.choices(list(reports), weights=weights, k=1)[0]


# ---------------------------------------------------------------------------
# factorized two-model fast path


def _classify_outcomes(
    table1: Sequence[float], table2: Sequence[float], u: float
) -> tuple[list[tuple[float, float, float, float]], float, float, float, float]:
    """Split one item's outcomes into finite-ratio and one-sided classes.

    Returns (finite outcomes as (lambda, q1, q2, u), q1 mass and u mass of
    model-1-only outcomes, q2 mass and u mass of model-2-only outcomes).
    """
    finite = []
    plus_q1 = plus_u = minus_q2 = minus_u = 0.0
    for q1, q2 in zip(table1, table2):
        if q1 > 0.0 and q2 > 0.0:
            finite.append((math.log(q1 / q2), q1, q2, u))
        elif q1 > 0.0:
            plus_q1 += q1
            plus_u += u
        elif q2 > 0.0:
            minus_q2 += q2
            minus_u += u
        # q1 == q2 == 0: declared outcome no model can produce; contributes 0
    return finite, plus_q1, plus_u, minus_q2, minus_u


def _eig_factorized_tables(
    tables1: Sequence[Sequence[float]],
    tables2: Sequence[Sequence[float]],
    prior1: float,
    prior2: float,
    outcome_prior: OutcomePrior,
    merge_tol: float = LLR_MERGE_TOL,
) -> float:
    """Exact two-model EIG over a product response space by LLR convolution.

    tables*[k] lists each item's outcome likelihoods (same outcome order
    for both models). Response vectors are grouped by their summed
    log-likelihood ratio L; the posterior, and hence the KL term, depends
    on the vector only through L. Support values within ``merge_tol`` of
    each other in L merge with summed weight. Vectors possible under only
    one model are handled in closed form (posterior collapses to that
    model regardless of L).
    """
    k_items = len(tables1)
    if k_items == 0 or len(tables2) != k_items:
        raise LengthMismatchError(f"got {k_items} vs {len(tables2)} item tables")

    # finite-part convolution state
    lam = np.zeros(1)
    w1 = np.ones(1)
    w2 = np.ones(1)
    wu = np.ones(1)
    # products of per-item finite/one-sided masses for the closed forms
    fin1_prod = fin2_prod = finu_prod = 1.0
    plus1_prod = plusu_prod = 1.0  # finite + model-1-only
    minus2_prod = minusu_prod = 1.0  # finite + model-2-only

    for t1, t2 in zip(tables1, tables2):
        if len(t1) != len(t2):
            raise LengthMismatchError("item outcome tables differ in length")
        u = 1.0 / len(t1)
        finite, plus_q1, plus_u, minus_q2, minus_u = _classify_outcomes(t1, t2, u)

        f1 = sum(q1 for _, q1, _, _ in finite)
        f2 = sum(q2 for _, _, q2, _ in finite)
        fu = u * len(finite)
        fin1_prod *= f1
        fin2_prod *= f2
        finu_prod *= fu
        plus1_prod *= f1 + plus_q1
        plusu_prod *= fu + plus_u
        minus2_prod *= f2 + minus_q2
        minusu_prod *= fu + minus_u

        if not finite:
            # no all-finite vectors survive; one-sided products keep accumulating
            lam = np.zeros(0)
            w1 = w2 = wu = np.zeros(0)
            continue
        if not len(lam):
            continue
        lams = np.array([o[0] for o in finite])
        q1s = np.array([o[1] for o in finite])
        q2s = np.array([o[2] for o in finite])
        us = np.array([o[3] for o in finite])
        # outer update then merge near-equal L values
        lam = (lam[:, None] + lams[None, :]).ravel()
        w1 = (w1[:, None] * q1s[None, :]).ravel()
        w2 = (w2[:, None] * q2s[None, :]).ravel()
        wu = (wu[:, None] * us[None, :]).ravel()
        keys = np.round(lam / merge_tol).astype(np.int64)
        uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        if len(uniq) < len(lam):
            lam = lam[first]
            w1 = np.bincount(inverse, weights=w1)
            w2 = np.bincount(inverse, weights=w2)
            wu = np.bincount(inverse, weights=wu)
        if len(lam) > LLR_SUPPORT_LIMIT:
            raise ConvolutionLimitError(
                f"merged LLR support reached {len(lam)} values; "
                "reduce the participant count or the item count"
            )

    total = 0.0
    if len(lam):
        a = prior1 * w1
        b = prior2 * w2
        z = a + b
        keep = z > 0.0
        a, b, z, wuk = a[keep], b[keep], z[keep], wu[keep]
        q1 = a / z
        q2 = b / z
        with np.errstate(divide="ignore", invalid="ignore"):
            kl = np.where(q1 > 0.0, q1 * np.log(q1 / prior1), 0.0) + np.where(
                q2 > 0.0, q2 * np.log(q2 / prior2), 0.0
            )
        weight = z if outcome_prior is OutcomePrior.PREDICTIVE else wuk
        total += float(np.sum(weight * kl))

    # vectors possible under exactly one model: posterior is that model
    # (a zero prior weight makes such vectors impossible overall: they
    # contribute nothing, matching the direct path's flagged outcomes)
    only1_mass = plus1_prod - fin1_prod
    only2_mass = minus2_prod - fin2_prod
    if only1_mass > 0.0 and prior1 > 0.0:
        weight = (
            prior1 * only1_mass
            if outcome_prior is OutcomePrior.PREDICTIVE
            else plusu_prod - finu_prod
        )
        total += weight * math.log(1.0 / prior1)
    if only2_mass > 0.0 and prior2 > 0.0:
        weight = (
            prior2 * only2_mass
            if outcome_prior is OutcomePrior.PREDICTIVE
            else minusu_prod - finu_prod
        )
        total += weight * math.log(1.0 / prior2)
    return total


def eig_factorized_two_model(
    item_probs_m1: Sequence[float],
    item_probs_m2: Sequence[float],
    prior: FiniteDistribution,
    outcome_prior: OutcomePrior,
    n: int = 1,
    merge_tol: float = LLR_MERGE_TOL,
) -> float:
    """Exact EIG for two models with independent per-item binary labels.

    Equals direct enumeration of the full response-vector space (size
    2**K for n = 1, (n+1)**K for the group-lifted case) but runs in time
    polynomial in the merged LLR support. Probabilities of exactly 0 or 1
    are allowed and treated as point masses. ``item_probs_m1`` belongs to
    the model that sorts first in the prior's support.

    Raises:
        LengthMismatchError: item lists differ in length or are empty.
        UnsupportedModelCountError: the prior is not over exactly 2 models;
            callers should fall back to direct enumeration then.
    """
    if len(item_probs_m1) != len(item_probs_m2) or not item_probs_m1:
        raise LengthMismatchError(
            f"need equal-length nonempty lists, got {len(item_probs_m1)} and {len(item_probs_m2)}"
        )
    if len(prior) != 2:
        raise UnsupportedModelCountError(
            f"fast path supports exactly 2 models, prior has {len(prior)}"
        )
    for p in (*item_probs_m1, *item_probs_m2):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"item probability {p!r} outside [0, 1]")
    prior1, prior2 = prior.probs
    if n == 1:
        tables1 = [(p, 1.0 - p) for p in item_probs_m1]
        tables2 = [(p, 1.0 - p) for p in item_probs_m2]
    else:
        from .distributions import binomial_pmf

        tables1 = [tuple(binomial_pmf(n, p, k) for k in range(n + 1)) for p in item_probs_m1]
        tables2 = [tuple(binomial_pmf(n, p, k) for k in range(n + 1)) for p in item_probs_m2]
    return _eig_factorized_tables(tables1, tables2, prior1, prior2, outcome_prior, merge_tol)
