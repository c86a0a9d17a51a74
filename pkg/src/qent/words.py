"""Word-level machinery: exact counting, block codes, growth rates.

This module is the brute-force side of every cross-check: everything here
works with finite words and exact integer arithmetic, never with spectra.
Finite admissible words of the essential subgraph stand in for the factor
language of the two-sided chain (on an essential graph every finite word
extends in both directions).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import CapExceeded, DimensionMismatch, EmptySubshift
from .graphs import (
    AdjacencyMatrix,
    VertexSurjection,
    essential_subgraph,
    restrict_surjection,
)
from .spectral import EntropyReport

Word = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**7
DEFAULT_STATE_CAP = 2**20


@dataclass(frozen=True)
class SlidingBlockCode:
    """Local window rule defining a continuous shift-equivariant map.

    The table must be total on all windows of length 2*memory + 1 over the
    input alphabet; symbols are 0-based on both sides.
    """

    memory: int
    input_alphabet_size: int
    output_alphabet_size: int
    table: Mapping[Word, int] = field(hash=False)

    def __post_init__(self):
        if self.memory < 0:
            raise ValueError("memory must be >= 0")
        width = 2 * self.memory + 1
        expected = self.input_alphabet_size**width
        if len(self.table) != expected:
            raise ValueError(
                f"table has {len(self.table)} windows, needs all {expected}"
            )
        for window, out in self.table.items():
            if len(window) != width:
                raise ValueError(f"window {window} does not have length {width}")
            if not all(0 <= s < self.input_alphabet_size for s in window):
                raise ValueError(f"window {window} outside the input alphabet")
            if not 0 <= out < self.output_alphabet_size:
                raise ValueError(f"output {out} outside the output alphabet")

    @classmethod
    def zero_memory(cls, f: VertexSurjection) -> SlidingBlockCode:
        """Memoryless code applying a vertex surjection symbol by symbol."""
        return cls(
            memory=0,
            input_alphabet_size=f.domain_size,
            output_alphabet_size=f.codomain_size,
            table={(i,): f(i) for i in range(f.domain_size)},
        )

    @property
    def window_width(self) -> int:
        return 2 * self.memory + 1


def is_admissible(A: AdjacencyMatrix, word: Sequence[int]) -> bool:
    """True iff every consecutive pair of symbols is an edge of A."""
    return all(A.rows[a][b] for a, b in zip(word, word[1:]))


def apply_block_code(code: SlidingBlockCode, word: Sequence[int]) -> Word:
    """Slide the local rule over the word; output is shorter by 2*memory."""
    width = code.window_width
    if len(word) < width:
        raise ValueError(f"word of length {len(word)} shorter than window {width}")
    w = tuple(word)
    return tuple(code.table[w[t : t + width]] for t in range(len(w) - width + 1))


def _essential_or_raise(A: AdjacencyMatrix) -> tuple[AdjacencyMatrix, tuple[int, ...]]:
    ess, kept = essential_subgraph(A)
    if ess is None:
        raise EmptySubshift("essential subgraph is empty; no admissible words")
    return ess, kept


def _count_range_essential(ess: AdjacencyMatrix, n_max: int) -> list[int]:
    """Exact word counts for lengths 1..n_max on an already-essential graph.

    count(L) is the sum of all entries of ess**(L-1), accumulated as
    1^T M^(L-1) 1 with Python integers (these counts overflow 64 bits fast).
    """
    rows = ess.rows
    vec = [1] * ess.n
    counts = [sum(vec)]
    for _ in range(n_max - 1):
        vec = [sum(x for b, x in zip(row, vec) if b) for row in rows]
        counts.append(sum(vec))
    return counts


def count_words(A: AdjacencyMatrix, n: int) -> int:
    """Number of admissible words of length n in the essential subgraph of A."""
    if n < 1:
        raise ValueError("word length must be >= 1")
    ess, _ = _essential_or_raise(A)
    return _count_range_essential(ess, n)[n - 1]


def count_words_range(A: AdjacencyMatrix, n_max: int) -> list[int]:
    """Exact counts for all lengths 1..n_max (index L-1 holds length L)."""
    if n_max < 1:
        raise ValueError("word length must be >= 1")
    ess, _ = _essential_or_raise(A)
    return _count_range_essential(ess, n_max)


def enumerate_words(
    A: AdjacencyMatrix, n: int, *, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Word]:
    """All admissible length-n words, lexicographically sorted.

    Words keep the original vertex indices of A even though only the
    essential part is walked. Raises CapExceeded when the exact count
    is above the cap.
    """
    ess, kept = _essential_or_raise(A)
    total = _count_range_essential(ess, n)[n - 1]
    if total > cap:
        raise CapExceeded(f"{total} words of length {n} exceed the cap {cap}")
    out_nbrs = [tuple(kept[j] for j in range(ess.n) if ess.rows[i][j]) for i in range(ess.n)]
    pos = {v: i for i, v in enumerate(kept)}
    words: list[Word] = []

    def extend(prefix: list[int]):
        if len(prefix) == n:
            words.append(tuple(prefix))
            return
        for nxt in out_nbrs[pos[prefix[-1]]]:
            prefix.append(nxt)
            extend(prefix)
            prefix.pop()

    for start in kept:
        extend([start])
    return words


def enumerate_image_words(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    n: int,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[Word]:
    """Distinct images under f of admissible length-n words, sorted.

    This is the plain enumerate-map-deduplicate route; it is the oracle the
    faster counting paths are checked against.
    """
    if f.domain_size != A.n:
        raise DimensionMismatch(f"surjection domain {f.domain_size} != |A| = {A.n}")
    images = {tuple(f(v) for v in w) for w in enumerate_words(A, n, cap=cap)}
    return sorted(images)


def _subset_successors(
    ess: AdjacencyMatrix, labels: VertexSurjection, state_cap: int
) -> list[list[int]]:
    """Reachable subset automaton of the labeled essential graph.

    States are nonempty vertex subsets, state 0 the full set. Each listed
    successor corresponds to exactly one output symbol (distinct symbols
    always lead to distinct subsets), so paths from state 0 are in bijection
    with image words. No trimming here: transient states still accept
    finite words and must be counted.
    """
    n = ess.n
    in_nbrs = [frozenset(i for i in range(n) if ess.rows[i][j]) for j in range(n)]
    by_symbol = [
        tuple(j for j in range(n) if labels(j) == a)
        for a in range(labels.codomain_size)
    ]
    full = frozenset(range(n))
    index: dict[frozenset[int], int] = {full: 0}
    queue: deque[frozenset[int]] = deque([full])
    succs: list[list[int]] = []
    while queue:
        state = queue.popleft()
        row: list[int] = []
        for verts in by_symbol:
            target = frozenset(j for j in verts if in_nbrs[j] & state)
            if not target:
                continue
            if target not in index:
                if len(index) >= state_cap:
                    raise CapExceeded(f"subset automaton exceeds {state_cap} states")
                index[target] = len(index)
                queue.append(target)
            row.append(index[target])
        succs.append(row)
    return succs


def _counts_from_successors(succs: list[list[int]], n_max: int) -> list[int]:
    """Path counts from state 0, lengths 1..n_max, exact integers."""
    weight = [0] * len(succs)
    weight[0] = 1
    counts = []
    for _ in range(n_max):
        nxt = [0] * len(succs)
        for s, ways in enumerate(weight):
            if ways:
                for t in succs[s]:
                    nxt[t] += ways
        weight = nxt
        counts.append(sum(weight))
    return counts


def image_word_counts(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    n_max: int,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
) -> list[int]:
    """Exact distinct-image counts for all lengths 1..n_max at once."""
    if f.domain_size != A.n:
        raise DimensionMismatch(f"surjection domain {f.domain_size} != |A| = {A.n}")
    ess, kept = _essential_or_raise(A)
    f_r, _ = restrict_surjection(f, kept)
    succs = _subset_successors(ess, f_r, state_cap)
    return _counts_from_successors(succs, n_max)


def image_word_count(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    n: int,
    *,
    method: str = "auto",
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> int:
    """Number of distinct images under f of admissible length-n words of A.

    method "enumerate" forces the enumerate-map-deduplicate route (capped by
    enumeration_cap on the raw word count); "automaton" counts paths in the
    subset automaton of the labeled graph; "auto" enumerates when feasible
    and escalates to the automaton otherwise.
    """
    if method not in ("auto", "enumerate", "automaton"):
        raise ValueError(f"unknown method {method!r}")
    if method == "automaton":
        return image_word_counts(A, f, n, state_cap=state_cap)[n - 1]
    if method == "auto" and count_words(A, n) > enumeration_cap:
        return image_word_counts(A, f, n, state_cap=state_cap)[n - 1]
    return len(enumerate_image_words(A, f, n, cap=enumeration_cap))


@dataclass(frozen=True)
class GrowthRate:
    """Successive-ratio growth estimate with per-length diagnostics.

    estimate is ln(x_N / x_{N-1}) at the largest N; normalized holds the
    slower (1/t) ln(x_t) sequence, one entry per supplied count.
    """

    estimate: float
    normalized: tuple[float, ...]


def growth_rate(counts: Sequence[int], *, first_length: int = 1) -> GrowthRate:
    """Exponential growth rate of a positive integer sequence.

    counts[k] is the value at length first_length + k. The ratio estimator
    converges geometrically for primitive matrices, while (1/t) ln(x_t)
    only converges like 1/t; both are reported.
    """
    if len(counts) < 2:
        raise ValueError("need at least 2 consecutive counts")
    for k, x in enumerate(counts):
        if x <= 0:
            raise ValueError(
                f"count {x} at length {first_length + k}: empty language"
            )
    estimate = math.log(counts[-1]) - math.log(counts[-2])
    normalized = tuple(
        math.log(x) / (first_length + k) for k, x in enumerate(counts)
    )
    return GrowthRate(estimate=estimate, normalized=normalized)


def quotient_entropy_bruteforce(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    n_max: int,
    *,
    state_cap: int = DEFAULT_STATE_CAP,
) -> EntropyReport:
    """Quotient entropy estimated from image-word counts at lengths 2..n_max.

    The value is the successive ratio at n_max; the residual is the gap to
    the previous ratio, a convergence indicator.
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4 to judge convergence")
    counts = image_word_counts(A, f, n_max, state_cap=state_cap)[1:]
    rate = growth_rate(counts, first_length=2)
    previous = math.log(counts[-2]) - math.log(counts[-3])
    return EntropyReport(
        value=rate.estimate,
        method="bruteforce",
        residual=abs(rate.estimate - previous),
        iterations=n_max,
    )
