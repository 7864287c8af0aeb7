"""Sequence-prediction case study: three coin models over 4-flip stimuli.

A participant watches four flips of the same coin and predicts the next
one. The competing psychological models:

* fair   -- the coin is fair; the sequence is ignored.
* bias   -- the coin has a latent weight with a uniform prior, learned
            from the four flips (Beta(1,1)-Binomial posterior predictive).
* markov -- consecutive flips switch with a latent probability under a
            uniform prior, learned from the three adjacent pairs; the
            prediction repeats or flips the last outcome accordingly.

Sequences are 4-character strings over {H, T} everywhere: configs,
reports, CSV columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .distributions import BetaParams, FiniteDistribution, beta_posterior_predictive
from .models import Model

__all__ = [
    "SEQUENCE_LENGTH",
    "CoinExperiment",
    "all_sequences",
    "mirror",
    "fair_coin",
    "bias_coin",
    "markov_coin",
    "coin_model",
    "COIN_MODELS",
]

SEQUENCE_LENGTH = 4

_UNIFORM_BETA = BetaParams(1.0, 1.0)


def _check_sequence(seq: str) -> str:
    if len(seq) != SEQUENCE_LENGTH or any(c not in "HT" for c in seq):
        raise ValueError(f"need a length-{SEQUENCE_LENGTH} H/T string, got {seq!r}")
    return seq


def all_sequences() -> list[str]:
    """All 16 stimulus sequences in canonical order (HHHH first, H < T)."""
    return ["".join(s) for s in itertools.product("HT", repeat=SEQUENCE_LENGTH)]


def mirror(seq: str) -> str:
    """Swap H and T throughout."""
    _check_sequence(seq)
    return seq.translate(str.maketrans("HT", "TH"))


@dataclass(frozen=True)
class CoinExperiment:
    """A stimulus sequence shown to n participants."""

    n: int
    seq: str

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"participant count must be >= 1, got {self.n}")
        _check_sequence(self.seq)

    @property
    def inner(self) -> str:
        return self.seq

    def canonical_key(self) -> str:
        return self.seq


def _prediction(p_heads: float) -> FiniteDistribution:
    return FiniteDistribution.from_probs([("H", p_heads), ("T", 1.0 - p_heads)])


def fair_coin(seq: str) -> FiniteDistribution:
    """Next-flip prediction under the fair model: always 50/50."""
    _check_sequence(seq)
    return _prediction(0.5)


def bias_coin(seq: str) -> FiniteDistribution:
    """Next-flip prediction after learning a coin weight from the sequence.

    Uniform prior on the weight; the four flips are the Bernoulli trials,
    so p(H) = (heads + 1) / 6 in closed form.
    """
    _check_sequence(seq)
    heads = seq.count("H")
    p = beta_posterior_predictive(_UNIFORM_BETA, heads, SEQUENCE_LENGTH - heads)
    return _prediction(p)


def markov_coin(seq: str) -> FiniteDistribution:
    """Next-flip prediction after learning a switch probability.

    The three adjacent pairs are the trials for the switch rate under a
    uniform prior (the first flip's uniform marginal carries no information
    about it), giving posterior-predictive switch probability (t + 1) / 5;
    the next flip repeats the last outcome with the complementary rate.
    """
    _check_sequence(seq)
    transitions = sum(1 for a, b in zip(seq, seq[1:]) if a != b)
    p_switch = beta_posterior_predictive(
        _UNIFORM_BETA, transitions, (SEQUENCE_LENGTH - 1) - transitions
    )
    p_heads = p_switch if seq[-1] == "T" else 1.0 - p_switch
    return _prediction(p_heads)


def coin_model(name: str) -> Model:
    """Look up one of the three single-participant coin models by name."""
    try:
        return COIN_MODELS[name]
    except KeyError:
        raise KeyError(f"unknown coin model {name!r}; known: {sorted(COIN_MODELS)}")


COIN_MODELS: dict[str, Model] = {
    "fair": Model(name="fair", predict=fair_coin),
    "bias": Model(name="bias", predict=bias_coin),
    "markov": Model(name="markov", predict=markov_coin),
}
