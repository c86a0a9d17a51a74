"""Topological entropy of a topological Markov chain (Parry).

The entropy of the chain generated by a graph is the natural logarithm of
the Perron spectral radius of its essential adjacency matrix. The radius is
computed per strongly connected component by power iteration on M + I; the
shift makes the iteration converge on periodic components (pure cycles),
and the radius of the whole matrix is the maximum over components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import EmptySubshift, NonConvergence
from .graphs import AdjacencyMatrix, essential_subgraph

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_ITERATIONS = 10**6

METHODS = ("spectral", "section", "sofic", "bruteforce")


@dataclass(frozen=True)
class EntropyReport:
    """An entropy value together with how it was obtained.

    value is in nats. residual is the power-iteration convergence residual,
    or a cross-route disagreement where two routes were computed. section
    carries the right-inverse vertex map when one was found.
    """

    value: float
    method: str
    residual: float
    iterations: int
    section: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not math.isfinite(self.value) or self.value < 0:
            raise ValueError(f"entropy must be finite and >= 0, got {self.value}")
        if self.residual < 0:
            raise ValueError("residual must be >= 0")


def _component_radius(
    M: np.ndarray, tolerance: float, max_iterations: int
) -> tuple[float, int, float]:
    """Perron radius of one irreducible block via power iteration on M + I."""
    k = M.shape[0]
    if k == 1:
        return float(M[0, 0]), 0, 0.0
    v = np.full(k, 1.0 / math.sqrt(k))
    for it in range(1, max_iterations + 1):
        w = M @ v + v
        v = w / np.linalg.norm(w)
        Mv = M @ v
        lam = float(v @ Mv) + 1.0
        residual = float(np.linalg.norm(Mv + v - lam * v))
        if residual <= tolerance:
            return lam - 1.0, it, residual
    raise NonConvergence(
        f"residual {residual:.3e} > {tolerance:.3e} after {max_iterations} iterations"
    )


def _radius_details(
    M: np.ndarray, tolerance: float, max_iterations: int
) -> tuple[float, int, float]:
    """(radius, total iterations, max residual) for a nonnegative matrix."""
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    if M.shape[0] < 1:
        raise ValueError("matrix must be nonempty")
    if not np.all(np.isfinite(M)) or np.any(M < 0):
        raise ValueError("matrix must be nonnegative and finite")
    n_comp, labels = connected_components(
        csr_matrix(M > 0), directed=True, connection="strong"
    )
    radius, iterations, residual = 0.0, 0, 0.0
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        r, it, res = _component_radius(
            M[np.ix_(idx, idx)], tolerance, max_iterations
        )
        radius = max(radius, r)
        iterations += it
        residual = max(residual, res)
    return radius, iterations, residual


def perron_radius(
    M,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> float:
    """Spectral radius of an arbitrary nonnegative matrix (array-like)."""
    arr = np.asarray(M, dtype=np.float64)
    return _radius_details(arr, tolerance, max_iterations)[0]


def spectral_radius(
    A: AdjacencyMatrix,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> float:
    """Perron spectral radius of the (possibly reducible) adjacency matrix."""
    return perron_radius(A.to_numpy(), tolerance=tolerance, max_iterations=max_iterations)


def integer_matrix_power(A: AdjacencyMatrix, m: int) -> np.ndarray:
    """A**m by repeated squaring, exact (Python-integer entries)."""
    if m < 1:
        raise ValueError("exponent must be >= 1")
    base = np.array(A.rows, dtype=object)
    result = None
    while m:
        if m & 1:
            result = base.copy() if result is None else result @ base
        base = base @ base
        m >>= 1
    return result


def entropy(
    A: AdjacencyMatrix,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EntropyReport:
    """Entropy of the chain generated by A: ln(radius) of its essential part.

    Raises EmptySubshift when the essential subgraph is empty; the chain is
    then the empty system and its entropy is undefined.
    """
    ess, _ = essential_subgraph(A)
    if ess is None:
        raise EmptySubshift("essential subgraph is empty; the chain has no points")
    radius, iterations, residual = _radius_details(
        ess.to_numpy(), tolerance, max_iterations
    )
    # An essential graph contains a cycle, so radius >= 1; a negative log
    # can only be roundoff noise.
    value = math.log(radius)
    if value < 0:
        assert value > -1e-9, f"radius {radius} < 1 on an essential graph"
        value = 0.0
    return EntropyReport(value=value, method="spectral", residual=residual, iterations=iterations)
