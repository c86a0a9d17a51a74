"""Finite directed graphs as 0/1 adjacency matrices, and vertex surjections.

Vertices are indexed 0..n-1 throughout the library; the file formats and the
CLI translate to the 1-based convention (see `qent.fileio`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, SizeLimitExceeded

#: Hard cap for the brute-force isomorphism search.
ISO_SIZE_LIMIT = 10


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Square 0/1 matrix; entry (i, j) = 1 iff there is an edge i -> j."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise ValueError("adjacency matrix must have at least one vertex")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("adjacency matrix must be square")
            for x in row:
                if x not in (0, 1):
                    raise ValueError(f"entries must be 0 or 1, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> AdjacencyMatrix:
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def full(cls, n: int) -> AdjacencyMatrix:
        """Complete graph with loops on n vertices (the full n-shift)."""
        return cls(tuple((1,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> AdjacencyMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]]) -> AdjacencyMatrix:
        rows = [[0] * n for _ in range(n)]
        for i, j in edges:
            rows[i][j] = 1
        return cls.from_rows(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.rows):
            for j, bit in enumerate(row):
                if bit:
                    yield (i, j)

    def to_numpy(self, dtype=np.float64) -> np.ndarray:
        return np.array(self.rows, dtype=dtype)

    def submatrix(self, kept: Sequence[int]) -> AdjacencyMatrix:
        return AdjacencyMatrix(
            tuple(tuple(self.rows[i][j] for j in kept) for i in kept)
        )

    def transpose(self) -> AdjacencyMatrix:
        return AdjacencyMatrix(tuple(zip(*self.rows)))


@dataclass(frozen=True)
class VertexSurjection:
    """Surjection from vertices 0..n-1 onto symbols 0..m-1.

    `image[i]` is the symbol assigned to vertex i; every symbol must occur.
    """

    codomain_size: int
    image: tuple[int, ...]

    def __post_init__(self):
        m = self.codomain_size
        if m < 1:
            raise ValueError("codomain must be nonempty")
        if m > len(self.image):
            raise ValueError("codomain larger than domain; cannot be surjective")
        seen = set()
        for v in self.image:
            if not 0 <= v < m:
                raise ValueError(f"value {v} outside codomain 0..{m - 1}")
            seen.add(v)
        if len(seen) != m:
            missing = sorted(set(range(m)) - seen)
            raise ValueError(f"not surjective: symbols {missing} never occur")

    @classmethod
    def identity(cls, n: int) -> VertexSurjection:
        return cls(n, tuple(range(n)))

    @property
    def domain_size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def fiber(self, k: int) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.image) if v == k)

    def fibers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.fiber(k) for k in range(self.codomain_size))


def compose_surjections(outer: VertexSurjection, inner: VertexSurjection) -> VertexSurjection:
    """outer o inner; coarsens inner's partition by outer."""
    if outer.domain_size != inner.codomain_size:
        raise DimensionMismatch(
            f"outer domain {outer.domain_size} != inner codomain {inner.codomain_size}"
        )
    return VertexSurjection(outer.codomain_size, tuple(outer(v) for v in inner.image))


def surjection_product(f: VertexSurjection, g: VertexSurjection) -> VertexSurjection:
    """Pairwise product map on row-major vertex pairs, matching kronecker_product."""
    image = tuple(
        f(i) * g.codomain_size + g(k)
        for i in range(f.domain_size)
        for k in range(g.domain_size)
    )
    return VertexSurjection(f.codomain_size * g.codomain_size, image)


def restrict_surjection(
    f: VertexSurjection, kept: Sequence[int]
) -> tuple[VertexSurjection, tuple[int, ...]]:
    """Restrict f to a vertex subset, compacting the codomain.

    Returns the restricted surjection together with the tuple of original
    symbols, in the order they were renumbered (new symbol s came from
    original symbol `symbols[s]`).
    """
    if not kept:
        raise ValueError("cannot restrict to an empty vertex set")
    used = sorted({f(i) for i in kept})
    renum = {old: new for new, old in enumerate(used)}
    return VertexSurjection(len(used), tuple(renum[f(i)] for i in kept)), tuple(used)


def preserves_edges(A: AdjacencyMatrix, B: AdjacencyMatrix, mapping: Sequence[int]) -> bool:
    """Edge-preservation check for an arbitrary vertex map A -> B.

    True iff A[i][j] = 1 implies B[mapping[i]][mapping[j]] = 1. Unlike
    `is_graph_morphism` this does not require the map to be surjective,
    which is what a section needs.
    """
    if len(mapping) != A.n:
        raise DimensionMismatch(f"map has {len(mapping)} entries, graph has {A.n} vertices")
    for v in mapping:
        if not 0 <= v < B.n:
            raise DimensionMismatch(f"map value {v} outside target graph 0..{B.n - 1}")
    return all(B.rows[mapping[i]][mapping[j]] for i, j in A.edges())


def is_graph_morphism(A: AdjacencyMatrix, B: AdjacencyMatrix, f: VertexSurjection) -> bool:
    """True iff the surjection f is a graph morphism A -> B."""
    if f.domain_size != A.n:
        raise DimensionMismatch(f"surjection domain {f.domain_size} != |A| = {A.n}")
    if f.codomain_size != B.n:
        raise DimensionMismatch(f"surjection codomain {f.codomain_size} != |B| = {B.n}")
    return preserves_edges(A, B, f.image)


def quotient_graph(A: AdjacencyMatrix, f: VertexSurjection) -> AdjacencyMatrix:
    """Graph on the fibers of f: edge k -> l iff some A-edge runs between them.

    f is a graph morphism from A onto the result by construction.
    """
    if f.domain_size != A.n:
        raise DimensionMismatch(f"surjection domain {f.domain_size} != |A| = {A.n}")
    m = f.codomain_size
    rows = [[0] * m for _ in range(m)]
    for i, j in A.edges():
        rows[f(i)][f(j)] = 1
    return AdjacencyMatrix.from_rows(rows)


def _section_consistent(
    B: AdjacencyMatrix, A: AdjacencyMatrix, assign: list[int], k: int, cand: int
) -> bool:
    # cand is a tentative value for g(k); check the edge condition against
    # every already-assigned coordinate, including k itself.
    if B.rows[k][k] and not A.rows[cand][cand]:
        return False
    for l, gl in enumerate(assign):
        if gl < 0 or l == k:
            continue
        if B.rows[k][l] and not A.rows[cand][gl]:
            return False
        if B.rows[l][k] and not A.rows[gl][cand]:
            return False
    return True


def _section_dfs(
    B: AdjacencyMatrix, A: AdjacencyMatrix, fibers, order: Sequence[int]
) -> tuple[int, ...] | None:
    m = B.n
    assign = [-1] * m

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        k = order[pos]
        for cand in fibers[k]:
            if _section_consistent(B, A, assign, k, cand):
                assign[k] = cand
                if extend(pos + 1):
                    return True
                assign[k] = -1
        return False

    return tuple(assign) if extend(0) else None


def find_right_inverse(
    A: AdjacencyMatrix, B: AdjacencyMatrix, f: VertexSurjection
) -> tuple[int, ...] | None:
    """Search for a section g of f: f(g(k)) = k and g edge-preserving B -> A.

    Returns the lexicographically least section as a plain vertex map (a
    section is generally not surjective), or None when no section exists.
    The search backtracks over the fibers of f; a first pass orders them by
    increasing size to fail fast, and only when that pass succeeds is the
    lexicographically least solution extracted.
    """
    if not is_graph_morphism(A, B, f):
        raise ValueError("f is not a graph morphism from A to B")
    fibers = f.fibers()
    by_size = sorted(range(B.n), key=lambda k: (len(fibers[k]), k))
    if _section_dfs(B, A, fibers, by_size) is None:
        return None
    g = _section_dfs(B, A, fibers, range(B.n))
    assert g is not None
    return g


def essential_subgraph(
    A: AdjacencyMatrix,
) -> tuple[AdjacencyMatrix | None, tuple[int, ...]]:
    """Maximal subgraph where every vertex has in- and out-degree >= 1.

    These are exactly the vertices that occur in bi-infinite admissible
    sequences. Returns (subgraph, kept vertex indices); the subgraph is
    None when nothing survives (an AdjacencyMatrix cannot be 0x0).
    """
    alive = list(range(A.n))
    while alive:
        out_ok = [i for i in alive if any(A.rows[i][j] for j in alive)]
        in_ok = {j for j in alive if any(A.rows[i][j] for i in alive)}
        new_alive = [i for i in out_ok if i in in_ok]
        if len(new_alive) == len(alive):
            break
        alive = new_alive
    if not alive:
        return None, ()
    return A.submatrix(alive), tuple(alive)


def kronecker_product(A: AdjacencyMatrix, B: AdjacencyMatrix) -> AdjacencyMatrix:
    """Tensor product graph on row-major vertex pairs."""
    prod = np.kron(A.to_numpy(np.uint8), B.to_numpy(np.uint8))
    return AdjacencyMatrix.from_rows(prod.tolist())


def _iso_signature(A: AdjacencyMatrix, i: int) -> tuple[int, int, int]:
    out_deg = sum(A.rows[i])
    in_deg = sum(row[i] for row in A.rows)
    return (out_deg, in_deg, A.rows[i][i])


def graph_isomorphic(A: AdjacencyMatrix, B: AdjacencyMatrix) -> bool:
    """Brute-force isomorphism test for graphs with at most 10 vertices."""
    if A.n != B.n:
        return False
    if A.n > ISO_SIZE_LIMIT:
        raise SizeLimitExceeded(
            f"isomorphism search capped at {ISO_SIZE_LIMIT} vertices, got {A.n}"
        )
    n = A.n
    sig_a = [_iso_signature(A, i) for i in range(n)]
    sig_b = [_iso_signature(B, i) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False

    perm = [-1] * n  # perm[i] = image of A-vertex i in B
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or sig_a[i] != sig_b[cand]:
                continue
            ok = all(
                A.rows[i][j] == B.rows[cand][perm[j]]
                and A.rows[j][i] == B.rows[perm[j]][cand]
                for j in range(i)
            )
            if ok and A.rows[i][i] == B.rows[cand][cand]:
                used[cand] = True
                perm[i] = cand
                if extend(i + 1):
                    return True
                used[cand] = False
                perm[i] = -1
        return False

    return extend(0)
