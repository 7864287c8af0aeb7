"""Model abstraction, model spaces with priors, and i.i.d. group lifting.

A model is a pure map from an experiment to a response distribution. A
model space bundles several named models with a prior over them. Group
lifting turns a single-participant model into a model of n exchangeable
participants; under the i.i.d. assumption the success count (or vector of
per-item counts) is a sufficient statistic, so lifted response spaces stay
polynomial in n instead of exponential.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .distributions import FiniteDistribution, binomial_pmf, normalize

__all__ = [
    "NonBinaryResponseError",
    "NonFactorizableResponseError",
    "Model",
    "ModelSpace",
    "GroupExperiment",
    "groupify",
    "groupify_vector",
]


class NonBinaryResponseError(ValueError):
    """Group lifting needs a binary per-participant response domain."""


class NonFactorizableResponseError(ValueError):
    """Vector lifting needs conditionally independent per-item responses."""


@dataclass(frozen=True)
class Model:
    """A named conditional distribution over responses given an experiment.

    ``predict`` must be deterministic and pure. Optional hooks let the
    engine avoid materializing huge response tables:

    * ``score(x, y)``: likelihood of a single response without building
      the full distribution (must agree with ``predict(x).prob(y)``).
    * ``item_probs(x)``: per-item success probabilities, present only when
      the response is a vector of conditionally independent binary labels.
    """

    name: str
    predict: Callable[[Any], FiniteDistribution]
    score: Callable[[Any, Any], float] | None = None
    item_probs: Callable[[Any], tuple[float, ...]] | None = None

    def likelihood(self, x: Any, y: Any) -> float:
        if self.score is not None:
            return self.score(x, y)
        return self.predict(x).prob(y)


@dataclass(frozen=True)
class ModelSpace:
    """An ordered set of models plus a prior over their names."""

    models: tuple[Model, ...]
    prior: FiniteDistribution

    def __post_init__(self) -> None:
        names = [m.name for m in self.models]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate model names: {names}")
        if len(names) < 2:
            raise ValueError("a model space needs at least 2 models")
        if set(self.prior.support) != set(names):
            raise ValueError(
                f"prior support {self.prior.support} != model names {tuple(names)}"
            )

    @classmethod
    def uniform(cls, models: Sequence[Model]) -> "ModelSpace":
        return cls(tuple(models), normalize((m.name, 1.0) for m in models))

    @classmethod
    def with_weights(cls, models: Sequence[Model], weights: Sequence[float]) -> "ModelSpace":
        if len(weights) != len(models):
            raise ValueError("one prior weight per model required")
        return cls(tuple(models), normalize((m.name, w) for m, w in zip(models, weights)))

    def model(self, name: str) -> Model:
        for m in self.models:
            if m.name == name:
                return m
        raise KeyError(name)


@dataclass(frozen=True)
class GroupExperiment:
    """An inner per-participant experiment run on n participants."""

    n: int
    inner: Any

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"participant count must be >= 1, got {self.n}")


def _binary_success_prob(single: Model, inner: Any, success: Any) -> float:
    dist = single.predict(inner)
    if len(dist) != 2:
        raise NonBinaryResponseError(
            f"model {single.name!r} has response domain {dist.support}, expected 2 values"
        )
    if success not in dist.support:
        raise NonBinaryResponseError(
            f"success value {success!r} not in response domain {dist.support}"
        )
    return dist.prob(success)


def groupify(single: Model, success: Any = "H") -> Model:
    """Lift a binary-response model to a model of n i.i.d. participants.

    The lifted model takes experiments with fields ``n`` and ``inner`` and
    returns the Binomial(n, p) distribution over success counts 0..n, with
    p the single-participant success probability for ``inner``. Responses
    are exchangeable by assumption, so the count is sufficient.
    """

    def predict(x: Any) -> FiniteDistribution:
        p = _binary_success_prob(single, x.inner, success)
        return FiniteDistribution.from_probs(
            (k, binomial_pmf(x.n, p, k)) for k in range(x.n + 1)
        )

    def score(x: Any, k: Any) -> float:
        p = _binary_success_prob(single, x.inner, success)
        return binomial_pmf(x.n, p, int(k))

    return Model(name=single.name, predict=predict, score=score)


def groupify_vector(single: Model, success: Any = 1) -> Model:
    """Lift a multi-item binary-label model to per-item success counts.

    The inner model must expose ``item_probs`` (its per-item labels are
    conditionally independent given point parameters); the lifted response
    is a tuple of per-item counts, each Binomial(n, p_item) independently.
    The full table has (n+1)**K entries: ``predict`` is only materializable
    for small K*n, while ``score`` stays cheap for any n.
    """
    if single.item_probs is None:
        raise NonFactorizableResponseError(
            f"model {single.name!r} does not declare independent per-item responses"
        )
    inner_item_probs = single.item_probs

    def predict(x: Any) -> FiniteDistribution:
        ps = inner_item_probs(x.inner)
        tables = [
            [(k, binomial_pmf(x.n, p, k)) for k in range(x.n + 1)] for p in ps
        ]
        pairs = []
        for combo in itertools.product(*tables):
            counts = tuple(k for k, _ in combo)
            prob = 1.0
            for _, q in combo:
                prob *= q
            pairs.append((counts, prob))
        return FiniteDistribution.from_probs(pairs)

    def score(x: Any, counts: Any) -> float:
        ps = inner_item_probs(x.inner)
        if len(counts) != len(ps):
            raise ValueError(f"expected {len(ps)} per-item counts, got {len(counts)}")
        prob = 1.0
        for p, c in zip(ps, counts):
            prob *= binomial_pmf(x.n, p, int(c))
        return prob

    def item_probs(x: Any) -> tuple[float, ...]:
        return inner_item_probs(x.inner)

    return Model(name=single.name, predict=predict, score=score, item_probs=item_probs)
