"""Bayesian optimal experiment design over finite model spaces.

Compute each candidate experiment's expected information gain about a
model posterior, pick the optimal experiment, and score empirical results
by their actual information gain. Ships two worked suites: coin-sequence
prediction and category learning (exemplar vs prototype).
"""

from .distributions import (
    AllZeroWeightsError,
    BetaParams,
    FiniteDistribution,
    SupportMismatchError,
    beta_posterior_predictive,
    binomial_pmf,
    expectation,
    kl_divergence,
    normalize,
)
from .engine import (
    AllZeroLikelihoodError,
    DesignReport,
    EmptyResponseSpaceError,
    LengthMismatchError,
    OutcomePrior,
    PerOutcome,
    UnsupportedModelCountError,
    actual_information_gain,
    eig_curve,
    eig_factorized_two_model,
    expected_information_gain,
    model_posterior,
    mutual_information,
    rank_experiments,
    softmax_choice,
)
from .models import (
    GroupExperiment,
    Model,
    ModelSpace,
    NonBinaryResponseError,
    NonFactorizableResponseError,
    groupify,
    groupify_vector,
)

__version__ = "0.1.0"

__all__ = [
    "AllZeroLikelihoodError",
    "AllZeroWeightsError",
    "BetaParams",
    "DesignReport",
    "EmptyResponseSpaceError",
    "FiniteDistribution",
    "GroupExperiment",
    "LengthMismatchError",
    "Model",
    "ModelSpace",
    "NonBinaryResponseError",
    "NonFactorizableResponseError",
    "OutcomePrior",
    "PerOutcome",
    "SupportMismatchError",
    "UnsupportedModelCountError",
    "actual_information_gain",
    "beta_posterior_predictive",
    "binomial_pmf",
    "eig_curve",
    "eig_factorized_two_model",
    "expectation",
    "expected_information_gain",
    "groupify",
    "groupify_vector",
    "kl_divergence",
    "model_posterior",
    "mutual_information",
    "normalize",
    "rank_experiments",
    "softmax_choice",
]
