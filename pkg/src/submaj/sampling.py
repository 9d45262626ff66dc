"""Seeded random generators for tests, fuzzing and the selftest battery.

All sampling flows from numpy ``SeedSequence`` spawning, so serial and
parallel runs of the same master seed draw identical instances.
"""
from __future__ import annotations

import numpy as np

from .config import DEFAULT_CLASS_TOL
from .matrices import StochMatrix, classify_matrix
from .preservers import Injection, InjectionFamily
from .vectors import NonNegVector


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def random_nonneg_vector(rng: np.random.Generator, dim: int, zero_frac: float = 0.2) -> NonNegVector:
    """Uniform entries with a sprinkling of exact zeros for tie coverage."""
    vals = rng.uniform(0.0, 1.0, size=dim)
    vals[rng.uniform(size=dim) < zero_frac] = 0.0
    return NonNegVector(vals)


def random_doubly_substochastic(
    rng: np.random.Generator, n: int, tol: float = DEFAULT_CLASS_TOL
) -> StochMatrix:
    """Random nonnegative matrix scaled so all row and column sums are <= 1."""
    raw = rng.uniform(0.0, 1.0, size=(n, n))
    raw[rng.uniform(size=(n, n)) < 0.2] = 0.0
    cap = max(float(raw.sum(axis=0).max()), float(raw.sum(axis=1).max()), 1e-12)
    return classify_matrix(raw / cap * rng.uniform(0.4, 1.0), tol)


def random_permutation_matrix(rng: np.random.Generator, n: int) -> StochMatrix:
    perm = rng.permutation(n)
    data = np.zeros((n, n))
    data[np.arange(n), perm] = 1.0
    return classify_matrix(data)


def random_doubly_stochastic(
    rng: np.random.Generator, n: int, tol: float = DEFAULT_CLASS_TOL
) -> StochMatrix:
    """Convex combination of a handful of permutation matrices."""
    k = int(rng.integers(1, n + 3))
    weights = rng.dirichlet(np.ones(k))
    data = np.zeros((n, n))
    for w in weights:
        data += w * random_permutation_matrix(rng, n).data
    return classify_matrix(data, tol)


def random_injection_family(
    rng: np.random.Generator, members: int, domain_dim: int, truncate: int
) -> InjectionFamily:
    """Disjoint-image injections from {1..domain_dim} into {1..truncate}."""
    need = members * domain_dim
    if need > truncate:
        raise ValueError(f"cannot fit {need} disjoint image points into 1..{truncate}")
    targets = rng.choice(truncate, size=need, replace=False) + 1
    parts = targets.reshape(members, domain_dim)
    return InjectionFamily(tuple(Injection(tuple(int(t) for t in row)) for row in parts))
