"""Shared independent oracles for the test suite.

These deliberately re-derive quantities with different algorithms than the
package uses (direct enumeration, grid quadrature), so they can vouch for
the production paths instead of mirroring them.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest


def direct_two_model_eig(p1s, p2s, prior=(0.5, 0.5), outcome="predictive"):
    """Brute-force two-model EIG over the full 2**K label-vector space."""
    k = len(p1s)
    total = 0.0
    for labels in itertools.product((0, 1), repeat=k):
        lik1 = 1.0
        lik2 = 1.0
        for y, p1, p2 in zip(labels, p1s, p2s):
            lik1 *= p1 if y else (1.0 - p1)
            lik2 *= p2 if y else (1.0 - p2)
        a = prior[0] * lik1
        b = prior[1] * lik2
        z = a + b
        if z == 0.0:
            continue
        post = (a / z, b / z)
        kl = sum(q * math.log(q / pr) for q, pr in zip(post, prior) if q > 0.0)
        weight = z if outcome == "predictive" else 1.0 / 2**k
        total += weight * kl
    return total


def direct_two_model_eig_fast(p1s, p2s, prior=(0.5, 0.5), outcome="predictive"):
    """Same brute force, vectorized so that K = 16 stays affordable."""
    p1 = np.asarray(p1s)
    p2 = np.asarray(p2s)
    k = len(p1)
    y = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.float64)
    lik1 = np.exp(y @ np.log(p1) + (1.0 - y) @ np.log1p(-p1))
    lik2 = np.exp(y @ np.log(p2) + (1.0 - y) @ np.log1p(-p2))
    a = prior[0] * lik1
    b = prior[1] * lik2
    z = a + b
    keep = z > 0.0
    q1 = a[keep] / z[keep]
    q2 = b[keep] / z[keep]
    with np.errstate(divide="ignore", invalid="ignore"):
        kl = np.where(q1 > 0, q1 * np.log(q1 / prior[0]), 0.0) + np.where(
            q2 > 0, q2 * np.log(q2 / prior[1]), 0.0
        )
    weight = z[keep] if outcome == "predictive" else np.full(keep.sum(), 1.0 / 2**k)
    return float(np.sum(weight * kl))


def brute_force_count_eig(model_probs, n, outcome="uniform", prior=None):
    """Independent EIG oracle for binomial count responses 0..n."""
    m = len(model_probs)
    prior = [1.0 / m] * m if prior is None else prior
    total = 0.0
    for count in range(n + 1):
        liks = [math.comb(n, count) * p**count * (1.0 - p) ** (n - count) for p in model_probs]
        z = sum(pr * l for pr, l in zip(prior, liks))
        if z == 0.0:
            continue
        post = [pr * l / z for pr, l in zip(prior, liks)]
        kl = sum(q * math.log(q / pr) for q, pr in zip(post, prior) if q > 0.0)
        weight = 1.0 / (n + 1) if outcome == "uniform" else z
        total += weight * kl
    return total


def beta_predictive_by_quadrature(successes, failures, grid_points=100_000):
    """Trapezoid quadrature of the Beta(1,1) posterior-predictive integral."""
    w = np.linspace(0.0, 1.0, grid_points)
    lik = w**successes * (1.0 - w) ** failures
    return float(np.trapezoid(w * lik, w) / np.trapezoid(lik, w))


@pytest.fixture(scope="session")
def coin_singles():
    from oedkit.coins import COIN_MODELS

    return dict(COIN_MODELS)
