"""Shared generators for randomized property tests.

Everything is driven by explicitly seeded random.Random instances so every
test run is reproducible.
"""

from __future__ import annotations

import random

import numpy as np

from qent import AdjacencyMatrix, VertexSurjection, essential_subgraph


def is_primitive(A: AdjacencyMatrix) -> bool:
    """Irreducible and aperiodic: some power of A is entrywise positive.

    Uses the Wielandt exponent (n-1)^2 + 1 as the sufficient power.
    """
    n = A.n
    M = (A.to_numpy(np.int64) > 0).astype(object)
    P = np.linalg.matrix_power(M, (n - 1) ** 2 + 1)
    return bool(np.all(P > 0))


def random_essential_graph(
    rng: random.Random, min_n: int = 2, max_n: int = 6, p: float = 0.5
) -> AdjacencyMatrix:
    """Rejection-sample a graph that equals its own essential part."""
    while True:
        n = rng.randint(min_n, max_n)
        rows = [[1 if rng.random() < p else 0 for _ in range(n)] for _ in range(n)]
        ess, _ = essential_subgraph(AdjacencyMatrix.from_rows(rows))
        if ess is not None and ess.n >= min_n:
            return ess


def random_primitive_graph(
    rng: random.Random, min_n: int = 2, max_n: int = 6, p: float = 0.5
) -> AdjacencyMatrix:
    """Random essential graph that is additionally primitive.

    The successive-ratio growth estimator converges geometrically exactly
    for primitive matrices, so the tolerance budgets of the fixed-length
    oracle comparisons are only guaranteed on this class.
    """
    while True:
        A = random_essential_graph(rng, min_n, max_n, p)
        if is_primitive(A):
            return A


def random_surjection(rng: random.Random, n: int, m: int | None = None) -> VertexSurjection:
    """Uniformish random surjection from n vertices onto 1..m symbols."""
    if m is None:
        m = rng.randint(1, n)
    image = [rng.randrange(m) for _ in range(n)]
    for symbol, slot in zip(range(m), rng.sample(range(n), m)):
        image[slot] = symbol
    return VertexSurjection(m, tuple(image))
