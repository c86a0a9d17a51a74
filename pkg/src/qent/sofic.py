"""Deterministic presentations of images of chains under memoryless codes.

The image of a topological Markov chain under a vertex relabeling is sofic
but usually not Markov (the even shift is the standard example). A subset
construction over the labeled graph yields a deterministic presentation
whose graph entropy equals the image entropy, giving an exact quotient
entropy that needs no right-inverse section.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import CapExceeded, DimensionMismatch, EmptySubshift, SectionAbsent
from .graphs import (
    AdjacencyMatrix,
    VertexSurjection,
    essential_subgraph,
    find_right_inverse,
    quotient_graph,
    restrict_surjection,
)
from .spectral import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    EntropyReport,
    _radius_details,
    entropy,
)
from .words import DEFAULT_STATE_CAP, quotient_entropy_bruteforce

#: In auto mode, graphs up to this many vertices get both routes computed
#: and the disagreement recorded as the residual.
AUTO_CROSSCHECK_LIMIT = 8

DEFAULT_BRUTEFORCE_LENGTH = 25


@dataclass(frozen=True)
class LabeledGraph:
    """A graph whose vertices carry output symbols (a 0-memory code)."""

    base: AdjacencyMatrix
    labels: VertexSurjection

    def __post_init__(self):
        if self.labels.domain_size != self.base.n:
            raise DimensionMismatch(
                f"labeling covers {self.labels.domain_size} vertices, graph has {self.base.n}"
            )

    @property
    def alphabet_size(self) -> int:
        return self.labels.codomain_size


@dataclass(frozen=True)
class DeterministicPresentation:
    """Right-resolving presentation of a sofic shift.

    states are nonempty vertex subsets of the base graph; transitions map
    (state index, symbol) to a state index, at most one per pair; adjacency
    is the derived 0/1 graph (edge iff some symbol transitions).
    """

    states: tuple[frozenset[int], ...]
    transitions: Mapping[tuple[int, int], int] = field(hash=False)
    adjacency: AdjacencyMatrix
    alphabet_size: int

    def __post_init__(self):
        if any(not s for s in self.states):
            raise ValueError("presentation states must be nonempty subsets")
        if self.adjacency.n != len(self.states):
            raise DimensionMismatch("adjacency size differs from state count")


def determinize(
    g: LabeledGraph, *, state_cap: int = DEFAULT_STATE_CAP
) -> DeterministicPresentation:
    """Subset construction for the image language of a labeled graph.

    Starts from the full vertex set of the essential part (bi-infinite
    sequences have no designated start; the reachable trimmed part from the
    full set presents exactly the factor language of the image) and trims
    the result to its essential subgraph. The bi-infinite label sequences
    of the presentation are exactly the image of the chain under the
    labeling.
    """
    ess, kept = essential_subgraph(g.base)
    if ess is None:
        raise EmptySubshift("essential subgraph is empty; the image shift is empty")
    labels, _ = restrict_surjection(g.labels, kept)

    n = ess.n
    in_nbrs = [frozenset(i for i in range(n) if ess.rows[i][j]) for j in range(n)]
    by_symbol = [
        tuple(j for j in range(n) if labels(j) == a)
        for a in range(labels.codomain_size)
    ]
    full = frozenset(range(n))
    index: dict[frozenset[int], int] = {full: 0}
    order: list[frozenset[int]] = [full]
    transitions: dict[tuple[int, int], int] = {}
    queue: deque[int] = deque([0])
    while queue:
        s = queue.popleft()
        for a, verts in enumerate(by_symbol):
            target = frozenset(j for j in verts if in_nbrs[j] & order[s])
            if not target:
                continue
            if target not in index:
                if len(index) >= state_cap:
                    raise CapExceeded(f"subset automaton exceeds {state_cap} states")
                index[target] = len(order)
                order.append(target)
                queue.append(index[target])
            transitions[(s, a)] = index[target]

    derived = AdjacencyMatrix.from_rows(
        [
            [int(any(transitions.get((s, a)) == t for a in range(len(by_symbol))))
             for t in range(len(order))]
            for s in range(len(order))
        ]
    )
    trimmed, kept_states = essential_subgraph(derived)
    if trimmed is None:
        raise EmptySubshift("presentation trimmed to nothing")
    renum = {old: new for new, old in enumerate(kept_states)}
    states = tuple(
        frozenset(kept[i] for i in order[s]) for s in kept_states
    )
    new_transitions = {
        (renum[s], a): renum[t]
        for (s, a), t in transitions.items()
        if s in renum and t in renum
    }
    return DeterministicPresentation(
        states=states,
        transitions=new_transitions,
        adjacency=trimmed,
        alphabet_size=labels.codomain_size,
    )


def sofic_entropy(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    state_cap: int = DEFAULT_STATE_CAP,
) -> EntropyReport:
    """Entropy of the image of the chain of A under the symbol map f."""
    if f.domain_size != A.n:
        raise DimensionMismatch(f"surjection domain {f.domain_size} != |A| = {A.n}")
    pres = determinize(LabeledGraph(A, f), state_cap=state_cap)
    radius, iterations, residual = _radius_details(
        pres.adjacency.to_numpy(), tolerance, max_iterations
    )
    value = math.log(radius)
    if value < 0:
        assert value > -1e-9, f"radius {radius} < 1 on a trimmed presentation"
        value = 0.0
    return EntropyReport(value=value, method="sofic", residual=residual, iterations=iterations)


def _section_route(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    tolerance: float,
    max_iterations: int,
) -> EntropyReport | None:
    """Quotient entropy through a right inverse, or None when none exists."""
    ess, kept = essential_subgraph(A)
    if ess is None:
        raise EmptySubshift("essential subgraph is empty")
    f_r, symbols = restrict_surjection(f, kept)
    B = quotient_graph(ess, f_r)
    g = find_right_inverse(ess, B, f_r)
    if g is None:
        return None
    section = tuple((symbols[k], kept[v]) for k, v in enumerate(g))
    report = entropy(B, tolerance=tolerance, max_iterations=max_iterations)
    return replace(report, method="section", section=section)


def quotient_entropy(
    A: AdjacencyMatrix,
    f: VertexSurjection,
    method: str = "auto",
    *,
    n_max: int = DEFAULT_BRUTEFORCE_LENGTH,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    state_cap: int = DEFAULT_STATE_CAP,
) -> EntropyReport:
    """Quotient entropy of the chain of A observed through f.

    method "section" computes the entropy of the quotient graph and demands
    a right-inverse graph morphism (raising SectionAbsent otherwise; its
    absence means the induced chain map need not be onto the quotient
    chain). "sofic" determinizes the image, "bruteforce" estimates from
    image-word counts up to n_max. "auto" prefers the section route and
    falls back to sofic; on small graphs it computes both available routes
    and reports their disagreement as the residual.
    """
    if method not in ("auto", "section", "sofic", "bruteforce"):
        raise ValueError(f"unknown method {method!r}")
    if method == "bruteforce":
        return quotient_entropy_bruteforce(A, f, n_max, state_cap=state_cap)
    if method == "sofic":
        return sofic_entropy(
            A, f, tolerance=tolerance, max_iterations=max_iterations, state_cap=state_cap
        )
    section_report = _section_route(A, f, tolerance, max_iterations)
    if method == "section":
        if section_report is None:
            raise SectionAbsent(
                "no right-inverse graph morphism exists for this quotient"
            )
        return section_report
    # auto
    if section_report is None:
        return sofic_entropy(
            A, f, tolerance=tolerance, max_iterations=max_iterations, state_cap=state_cap
        )
    if A.n <= AUTO_CROSSCHECK_LIMIT:
        cross = sofic_entropy(
            A, f, tolerance=tolerance, max_iterations=max_iterations, state_cap=state_cap
        )
        return replace(
            section_report, residual=abs(section_report.value - cross.value)
        )
    return section_report
