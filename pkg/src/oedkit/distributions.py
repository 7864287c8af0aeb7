"""Finite discrete probability distributions and information-theoretic primitives.

Everything downstream (model spaces, posteriors, information-gain scores)
trades in :class:`FiniteDistribution`: an explicit, canonically ordered
support-plus-probability table. All information quantities are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

__all__ = [
    "AllZeroWeightsError",
    "SupportMismatchError",
    "BetaParams",
    "FiniteDistribution",
    "normalize",
    "kl_divergence",
    "expectation",
    "binomial_pmf",
    "beta_posterior_predictive",
]

#: probabilities must sum to 1 within this tolerance
PROB_SUM_TOL = 1e-9


class AllZeroWeightsError(ValueError):
    """Every weight is zero: the conditioning event is impossible."""


class SupportMismatchError(ValueError):
    """KL is undefined: p puts mass where q has none."""


@dataclass(frozen=True)
class FiniteDistribution:
    """Explicit probability table over an arbitrary comparable value domain.

    Entries are stored sorted by value so that equal distributions compare
    and serialize identically. Values must be hashable and mutually
    orderable (strings, ints, or tuples thereof in practice). Duplicate
    values are merged at construction by summing their probability.

    Build instances via :func:`normalize` (arbitrary nonnegative weights)
    or :meth:`from_probs` (values already summing to 1).
    """

    entries: tuple[tuple[Any, float], ...]

    def __post_init__(self) -> None:
        total = 0.0
        for _, p in self.entries:
            if p < 0:
                raise ValueError(f"negative probability {p!r}")
            total += p
        if self.entries and abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        if not self.entries:
            raise ValueError("empty distribution")

    @classmethod
    def from_probs(cls, pairs: Iterable[tuple[Any, float]]) -> "FiniteDistribution":
        """Build from (value, probability) pairs; merges duplicates, sorts."""
        merged: dict[Any, float] = {}
        for value, p in pairs:
            merged[value] = merged.get(value, 0.0) + p
        return cls(tuple(sorted(merged.items(), key=lambda kv: kv[0])))

    @property
    def support(self) -> tuple[Any, ...]:
        return tuple(v for v, _ in self.entries)

    @property
    def probs(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.entries)

    def prob(self, value: Any) -> float:
        """Probability of ``value`` (0.0 if outside the support)."""
        for v, p in self.entries:
            if v == value:
                return p
        return 0.0

    def items(self) -> Iterator[tuple[Any, float]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def allclose(self, other: "FiniteDistribution", tol: float = PROB_SUM_TOL) -> bool:
        """True if supports match and probabilities differ by at most ``tol``."""
        if self.support != other.support:
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.probs, other.probs))

    def to_json_dict(self) -> dict[str, list]:
        """Canonical JSON form: {"support": [...], "probs": [...]}."""
        return {
            "support": [list(v) if isinstance(v, tuple) else v for v in self.support],
            "probs": list(self.probs),
        }


@dataclass(frozen=True)
class BetaParams:
    """Beta prior pseudo-counts: ``alpha`` successes, ``beta`` failures."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"Beta parameters must be positive, got {self}")


def normalize(weights: Iterable[tuple[Any, float]]) -> FiniteDistribution:
    """Scale nonnegative weights into a proper distribution.

    Duplicate values are merged by summing their weight.

    Raises:
        AllZeroWeightsError: if every weight is zero.
        ValueError: on a negative weight.
    """
    merged: dict[Any, float] = {}
    for value, w in weights:
        if w < 0:
            raise ValueError(f"negative weight {w!r} for {value!r}")
        merged[value] = merged.get(value, 0.0) + w
    if not merged:
        raise AllZeroWeightsError("no weights given")
    total = sum(merged.values())
    if total == 0.0:
        raise AllZeroWeightsError("all weights are zero")
    return FiniteDistribution(
        tuple(sorted(((v, w / total) for v, w in merged.items()), key=lambda kv: kv[0]))
    )


def kl_divergence(p: FiniteDistribution, q: FiniteDistribution) -> float:
    """KL divergence D(p || q) in nats, with 0*log(0/q) taken as 0.

    Raises:
        SupportMismatchError: if p puts positive probability on a value
            where q has none (an inconsistent posterior/prior pair).
    """
    q_lookup = dict(q.entries)
    total = 0.0
    for v, pv in p.entries:
        if pv == 0.0:
            continue
        qv = q_lookup.get(v, 0.0)
        if qv == 0.0:
            raise SupportMismatchError(f"p({v!r}) = {pv} > 0 but q({v!r}) = 0")
        total += pv * math.log(pv / qv)
    # Gibbs guarantees >= 0; rounding can leave a tiny negative residue.
    return total if total > 0.0 else 0.0


def expectation(d: FiniteDistribution) -> float:
    """Mean of a distribution over numeric values."""
    return sum(p * float(v) for v, p in d.entries)


def binomial_pmf(n: int, p: float, k: int) -> float:
    """Binomial(n, p) probability of k successes, stable for n up to >= 1e4.

    Small n uses the exact integer binomial coefficient (the coefficients
    stay exactly representable, so desk-scale cases like n = 2, p = 0.5
    come out bit-exact); large n switches to log space via lgamma to avoid
    overflow.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if p == 0.0:
        return 1.0 if k == 0 else 0.0
    if p == 1.0:
        return 1.0 if k == n else 0.0
    if k == 0:
        return (1.0 - p) ** n
    if k == n:
        return p**n
    if n <= 50:  # C(50, 25) < 2**53: exact in a float
        return math.comb(n, k) * p**k * (1.0 - p) ** (n - k)
    log_pmf = (
        math.lgamma(n + 1)
        - math.lgamma(k + 1)
        - math.lgamma(n - k + 1)
        + k * math.log(p)
        + (n - k) * math.log1p(-p)
    )
    return math.exp(log_pmf)


def beta_posterior_predictive(prior: BetaParams, successes: int, failures: int) -> float:
    """Probability of one more success after Bernoulli counts under a Beta prior.

    Closed form of the posterior-predictive integral:
    (alpha + s) / (alpha + beta + s + f).
    """
    if successes < 0 or failures < 0:
        raise ValueError("counts must be nonnegative")
    return (prior.alpha + successes) / (prior.alpha + prior.beta + successes + failures)
