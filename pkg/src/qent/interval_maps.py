"""Grid-aligned piecewise affine interval maps and their transition graphs.

A map is specified by its values at the grid points 0, 1/n, ..., 1, scaled
to integers 0..n. Everything geometric (image intervals, overlaps, fiber
preimages) is computed in exact integer or rational arithmetic; floating
point enters only at the spectral step. Exactness matters: open intervals
that merely touch at an endpoint do not overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    ConstantPiece,
    GridMismatch,
    GridNotInvariant,
    NoCompatibleSelection,
    NotMonotone,
    SinkInMarkovGraph,
)
from .graphs import (
    AdjacencyMatrix,
    VertexSurjection,
    is_graph_morphism,
    preserves_edges,
    quotient_graph,
)
from .spectral import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    EntropyReport,
    entropy,
)
from .sofic import AUTO_CROSSCHECK_LIMIT, sofic_entropy

ROLES = ("dynamics", "quotient")


@dataclass(frozen=True)
class PiecewiseAffineSpec:
    """Piecewise affine self-map of [0,1] on the uniform grid of size n.

    values[i] is n times the map value at grid point i/n; piece i (0-based)
    is the open cell (i/n, (i+1)/n). Only structural shape is checked here;
    the role-specific conditions are enforced by validate_horseshoe and
    validate_good_quotient so violations can be named.
    """

    grid: int
    values: tuple[int, ...]
    role: str

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        if self.grid < 2:
            raise ValueError("grid size must be >= 2")
        if len(self.values) != self.grid + 1:
            raise ValueError(
                f"need {self.grid + 1} breakpoint values, got {len(self.values)}"
            )
        if not all(isinstance(v, int) for v in self.values):
            raise ValueError("breakpoint values must be integers")

    @property
    def pieces(self) -> int:
        return self.grid


def _check_grid_range(spec: PiecewiseAffineSpec) -> None:
    n = spec.grid
    for i, v in enumerate(spec.values):
        if not 0 <= v <= n:
            raise GridNotInvariant(
                f"value {v} at grid point {i}/{n} leaves the grid 0..{n}"
            )


def markov_graph(spec: PiecewiseAffineSpec) -> AdjacencyMatrix:
    """Transition graph of the cells: edge i -> j iff the open image of
    cell i meets the open cell j.

    In grid units the image of cell i is (lo, hi) with lo = min of the two
    endpoint values and hi = max; it meets cell (j, j+1) iff
    max(lo, j) < min(hi, j+1), an exact integer test.
    """
    if spec.role != "dynamics":
        raise ValueError("markov_graph needs a dynamics spec")
    _check_grid_range(spec)
    n = spec.grid
    rows = []
    for i in range(n):
        a, b = spec.values[i], spec.values[i + 1]
        if a == b:
            raise ConstantPiece(f"piece {i + 1} of {n} is constant at {a}/{n}")
        lo, hi = min(a, b), max(a, b)
        rows.append([int(max(lo, j) < min(hi, j + 1)) for j in range(n)])
    return AdjacencyMatrix.from_rows(rows)


def validate_horseshoe(spec: PiecewiseAffineSpec) -> AdjacencyMatrix:
    """Check the three horseshoe conditions and return the Markov graph.

    (i) grid points map to grid points, (ii) every piece is nonconstant
    affine, (iii) no cell of the Markov graph has out-degree 0. Violations
    raise GridNotInvariant / ConstantPiece / SinkInMarkovGraph. The graph
    is returned raw, not essentialized; (iii) is a condition on the raw
    graph.
    """
    F = markov_graph(spec)
    for i, row in enumerate(F.rows):
        if not any(row):
            raise SinkInMarkovGraph(f"cell {i + 1} has no outgoing transition")
    return F


def circle_map_graph(n: int) -> AdjacencyMatrix:
    """Markov graph of the expanding circle map of degree n: each of the n
    arcs maps over the whole circle, giving the complete graph with loops."""
    if n < 2:
        raise ValueError("circle map degree must be >= 2")
    return AdjacencyMatrix.full(n)


def validate_good_quotient(dyn: PiecewiseAffineSpec, q: PiecewiseAffineSpec) -> None:
    """Check that q is a good quotient for the grid of dyn.

    Good means: same grid, grid points map to grid points, monotone
    (nondecreasing), and onto [0,1] (value 0 at 0 and 1 at 1; with
    monotonicity that is exactly surjectivity).
    """
    if dyn.role != "dynamics" or q.role != "quotient":
        raise ValueError("expected a dynamics spec and a quotient spec")
    if dyn.grid != q.grid:
        raise GridMismatch(f"dynamics grid {dyn.grid} != quotient grid {q.grid}")
    _check_grid_range(q)
    for i in range(q.grid):
        if q.values[i] > q.values[i + 1]:
            raise NotMonotone(
                f"quotient decreases on piece {i + 1}: "
                f"{q.values[i]} -> {q.values[i + 1]}"
            )
    if q.values[0] != 0 or q.values[-1] != q.grid:
        raise ValueError("quotient must be onto: q(0) = 0 and q(1) = 1 required")


@dataclass(frozen=True)
class CompatibleSelection:
    """A coarse cell partition compatible with the dynamics.

    coarse_map sends each fine cell to its coarse cell; section picks the
    unique fine cell filling each coarse fiber; quotient is the coarse
    transition graph. coarse_map is a graph morphism onto quotient with
    right inverse section.
    """

    partition_size: int
    coarse_map: VertexSurjection
    section: tuple[int, ...]
    quotient: AdjacencyMatrix


def _sup_at_or_below(values: tuple[int, ...], n: int, a: int) -> Fraction:
    """sup { x : q(x) <= a/n } for a monotone grid map, exact."""
    if values[-1] <= a:
        return Fraction(1)
    t = next(t for t in range(n + 1) if values[t] > a)
    # piece t-1 rises through a: values[t-1] <= a < values[t]
    return Fraction(t - 1, n) + Fraction(a - values[t - 1], (values[t] - values[t - 1]) * n)


def _inf_at_or_above(values: tuple[int, ...], n: int, b: int) -> Fraction:
    """inf { x : q(x) >= b/n } for a monotone grid map, exact."""
    if values[0] >= b:
        return Fraction(0)
    t = max(t for t in range(n + 1) if values[t] < b)
    return Fraction(t, n) + Fraction(b - values[t], (values[t + 1] - values[t]) * n)


def compatible_selection(
    dyn: PiecewiseAffineSpec, q: PiecewiseAffineSpec
) -> CompatibleSelection:
    """Build the compatible coarse partition induced by a good quotient.

    The nondegenerate open images of the fine cells under q tile (0,1);
    they form the coarse partition. A rising cell is assigned the index of
    its image; a flat cell maps to a single grid value, necessarily a tile
    boundary, and is assigned the lowest adjacent tile (the min rule). The
    section witness for coarse cell j is the unique fine cell contained in
    the fiber q^{-1}(V_j), located by exact rational preimages.
    """
    F = validate_horseshoe(dyn)
    validate_good_quotient(dyn, q)
    n = q.grid
    w = q.values

    tiles: list[tuple[int, int]] = []
    rising_piece: dict[tuple[int, int], int] = {}
    for i in range(n):
        if w[i] < w[i + 1]:
            tiles.append((w[i], w[i + 1]))
            rising_piece[(w[i], w[i + 1])] = i
    m = len(tiles)
    assert m >= 1, "a surjective monotone quotient has a rising piece"

    coarse = []
    for i in range(n):
        if w[i] < w[i + 1]:
            coarse.append(tiles.index((w[i], w[i + 1])))
        else:
            point = w[i]
            coarse.append(next(j for j, (_, hi) in enumerate(tiles) if point <= hi))
    c = VertexSurjection(m, tuple(coarse))

    section = []
    for a, b in tiles:
        fiber_lo = _sup_at_or_below(w, n, a)
        fiber_hi = _inf_at_or_above(w, n, b)
        witnesses = [
            i
            for i in range(n)
            if fiber_lo <= Fraction(i, n)
            and Fraction(i + 1, n) <= fiber_hi
            and w[i] < w[i + 1]
        ]
        if len(witnesses) != 1:
            raise NoCompatibleSelection(
                f"coarse cell ({a}/{n}, {b}/{n}) has {len(witnesses)} interior "
                "fine cells with open image; need exactly one for a section"
            )
        section.append(witnesses[0])

    B = quotient_graph(F, c)
    assert is_graph_morphism(F, B, c)
    assert all(c(section[j]) == j for j in range(m))
    assert preserves_edges(B, F, section)
    return CompatibleSelection(
        partition_size=m, coarse_map=c, section=tuple(section), quotient=B
    )


def quotient_entropy_interval(
    dyn: PiecewiseAffineSpec,
    q: PiecewiseAffineSpec,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EntropyReport:
    """Quotient entropy of a horseshoe observed through a good quotient.

    Goes through the compatible selection (the section route is always
    available here); on small graphs the sofic route is recomputed and the
    disagreement reported as the residual.
    """
    sel = compatible_selection(dyn, q)
    report = entropy(sel.quotient, tolerance=tolerance, max_iterations=max_iterations)
    section_pairs = tuple((j, i) for j, i in enumerate(sel.section))
    report = replace(report, method="section", section=section_pairs)
    F = markov_graph(dyn)
    if F.n <= AUTO_CROSSCHECK_LIMIT:
        cross = sofic_entropy(
            F, sel.coarse_map, tolerance=tolerance, max_iterations=max_iterations
        )
        report = replace(report, residual=abs(report.value - cross.value))
    return report
