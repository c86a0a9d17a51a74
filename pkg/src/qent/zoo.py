"""Named graphs, maps and specs that recur in tests and documentation."""

from __future__ import annotations

from .graphs import AdjacencyMatrix, VertexSurjection
from .interval_maps import PiecewiseAffineSpec


def full_shift(n: int) -> AdjacencyMatrix:
    """Complete graph with loops; every length-n word over n symbols occurs."""
    return AdjacencyMatrix.full(n)


def cycle(n: int) -> AdjacencyMatrix:
    """Single directed n-cycle: exactly n bi-infinite orbits, entropy 0."""
    return AdjacencyMatrix.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def golden_mean() -> AdjacencyMatrix:
    """Golden mean shift: binary sequences with no two consecutive 1s.

    Vertex 0 may repeat, vertex 1 may not; the radius is (1 + sqrt 5)/2.
    """
    return AdjacencyMatrix.from_rows([[1, 1], [1, 0]])


def even_shift_cover() -> AdjacencyMatrix:
    """Markov cover of the even shift, vertex order (0_b, 0_a, 1).

    Edges: 0_b -> 0_a, 0_b -> 1, 0_a -> 0_b, 1 -> 0_a, 1 -> 1. Collapsing
    both zero-vertices to the symbol 0 yields the shift whose points have
    consecutive 1s separated by evenly many 0s; that image is sofic but
    not Markov.
    """
    return AdjacencyMatrix.from_edges(3, [(0, 1), (0, 2), (1, 0), (2, 1), (2, 2)])


def even_shift_collapse() -> VertexSurjection:
    """The memoryless code 0_b, 0_a -> 0 and 1 -> 1 on even_shift_cover."""
    return VertexSurjection(2, (0, 0, 1))


def standard_horseshoe() -> PiecewiseAffineSpec:
    """Four-piece horseshoe: 1/2 -> 0 -> 1 -> 0 -> 1/2 along the grid."""
    return PiecewiseAffineSpec(4, (2, 0, 4, 0, 2), "dynamics")


def standard_quotient() -> PiecewiseAffineSpec:
    """Good quotient for the standard horseshoe: flat, rising, rising, flat."""
    return PiecewiseAffineSpec(4, (0, 0, 2, 4, 4), "quotient")


def tent_map() -> PiecewiseAffineSpec:
    """Full tent map on two pieces; each half maps onto the interval."""
    return PiecewiseAffineSpec(2, (0, 2, 0), "dynamics")


def identity_quotient(n: int) -> PiecewiseAffineSpec:
    """The identity as a (trivial) good quotient on an n-grid."""
    return PiecewiseAffineSpec(n, tuple(range(n + 1)), "quotient")
