"""Graph core: morphisms, quotients, sections, trimming, products, iso."""

import random

import pytest

from conftest import random_essential_graph, random_surjection
from qent import (
    AdjacencyMatrix,
    DimensionMismatch,
    SizeLimitExceeded,
    VertexSurjection,
    essential_subgraph,
    find_right_inverse,
    graph_isomorphic,
    is_graph_morphism,
    kronecker_product,
    preserves_edges,
    quotient_graph,
    spectral_radius,
)
from qent.zoo import even_shift_cover, even_shift_collapse, golden_mean

STANDARD = AdjacencyMatrix.from_rows(
    [[1, 1, 0, 0], [1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 0, 0]]
)
COLLAPSE_OUTER = VertexSurjection(2, (0, 0, 1, 1))

PHI = (1 + 5**0.5) / 2


class TestAdjacencyMatrix:
    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            AdjacencyMatrix.from_rows([[1, 0], [1]])

    def test_rejects_nonbinary_entries(self):
        with pytest.raises(ValueError):
            AdjacencyMatrix.from_rows([[2]])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            AdjacencyMatrix(())

    def test_from_edges(self):
        A = AdjacencyMatrix.from_edges(2, [(0, 1), (1, 0)])
        assert A.rows == ((0, 1), (1, 0))

    def test_immutable(self):
        A = AdjacencyMatrix.full(2)
        with pytest.raises(AttributeError):
            A.rows = ((0,),)


class TestVertexSurjection:
    def test_rejects_missing_symbol(self):
        with pytest.raises(ValueError):
            VertexSurjection(2, (0, 0, 0))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            VertexSurjection(2, (0, 2))

    def test_rejects_codomain_larger_than_domain(self):
        with pytest.raises(ValueError):
            VertexSurjection(3, (0, 1))

    def test_fibers(self):
        f = VertexSurjection(2, (0, 1, 1, 0))
        assert f.fibers() == ((0, 3), (1, 2))


class TestIsGraphMorphism:
    def test_standard_collapse_is_morphism(self):
        # The outer/inner pair collapse of the standard horseshoe matrix.
        assert is_graph_morphism(STANDARD, AdjacencyMatrix.full(2), COLLAPSE_OUTER)

    def test_identity_always_morphism(self):
        rng = random.Random(11)
        for _ in range(20):
            A = random_essential_graph(rng)
            assert is_graph_morphism(A, A, VertexSurjection.identity(A.n))

    def test_two_cycle_onto_single_vertex(self):
        # Collapsing the 2-cycle needs a loop at the single target vertex.
        two_cycle = AdjacencyMatrix.from_rows([[0, 1], [1, 0]])
        collapse = VertexSurjection(1, (0, 0))
        assert is_graph_morphism(two_cycle, AdjacencyMatrix.from_rows([[1]]), collapse)
        assert not is_graph_morphism(two_cycle, AdjacencyMatrix.from_rows([[0]]), collapse)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            is_graph_morphism(STANDARD, AdjacencyMatrix.full(2), VertexSurjection(2, (0, 1)))
        with pytest.raises(DimensionMismatch):
            is_graph_morphism(STANDARD, AdjacencyMatrix.full(3), COLLAPSE_OUTER)


class TestQuotientGraph:
    def test_full_shift_collapse(self):
        # Collapsing K4 by outer/inner pairs gives the full 2-shift graph.
        B = quotient_graph(AdjacencyMatrix.full(4), VertexSurjection(2, (0, 1, 1, 0)))
        assert B.rows == ((1, 1), (1, 1))

    def test_identity_quotient_is_same_graph(self):
        rng = random.Random(12)
        for _ in range(20):
            A = random_essential_graph(rng)
            assert quotient_graph(A, VertexSurjection.identity(A.n)) == A

    def test_even_shift_collapse(self):
        # Fiber-to-fiber edges, checked against the edge list by hand:
        # {0b,0a} has the internal 2-cycle and the edge 0b->1; vertex 1 has
        # its loop and the edge 1->0a. Every block is hit.
        B = quotient_graph(even_shift_cover(), even_shift_collapse())
        assert B.rows == ((1, 1), (1, 1))

    def test_quotient_map_is_always_morphism(self):
        rng = random.Random(13)
        for _ in range(30):
            A = random_essential_graph(rng)
            f = random_surjection(rng, A.n)
            assert is_graph_morphism(A, quotient_graph(A, f), f)


class TestFindRightInverse:
    def test_standard_example_section(self):
        # Known section of the standard collapse: symbols to vertices 2, 3
        # in 1-based terms.
        B = quotient_graph(STANDARD, COLLAPSE_OUTER)
        assert find_right_inverse(STANDARD, B, COLLAPSE_OUTER) == (1, 2)

    def test_identity_section_is_identity(self):
        A = golden_mean()
        f = VertexSurjection.identity(A.n)
        assert find_right_inverse(A, A, f) == (0, 1)

    def test_even_shift_has_no_section(self):
        # The quotient demands a loop at the zero symbol, but neither zero
        # vertex of the cover carries a loop; both candidates fail.
        A = even_shift_cover()
        f = even_shift_collapse()
        assert find_right_inverse(A, quotient_graph(A, f), f) is None

    def test_lexicographically_least_is_returned(self):
        # On K4 every choice works, so the least one must come back.
        K4 = AdjacencyMatrix.full(4)
        f = VertexSurjection(2, (0, 1, 1, 0))
        assert find_right_inverse(K4, quotient_graph(K4, f), f) == (0, 1)

    def test_non_morphism_precondition_is_an_error(self):
        two_cycle = AdjacencyMatrix.from_rows([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            find_right_inverse(two_cycle, AdjacencyMatrix.from_rows([[0]]), VertexSurjection(1, (0, 0)))

    def test_found_sections_are_valid(self):
        rng = random.Random(14)
        found = 0
        for _ in range(40):
            A = random_essential_graph(rng, max_n=5)
            f = random_surjection(rng, A.n)
            B = quotient_graph(A, f)
            g = find_right_inverse(A, B, f)
            if g is None:
                continue
            found += 1
            assert all(f(g[k]) == k for k in range(B.n))
            assert preserves_edges(B, A, g)
        assert found > 0


class TestEssentialSubgraph:
    def test_sink_removed(self):
        ess, kept = essential_subgraph(AdjacencyMatrix.from_rows([[1, 1], [0, 0]]))
        assert ess.rows == ((1,),) and kept == (0,)

    def test_full_graph_unchanged(self):
        A = AdjacencyMatrix.full(5)
        ess, kept = essential_subgraph(A)
        assert ess == A and kept == (0, 1, 2, 3, 4)

    def test_nilpotent_chain_empties(self):
        A = AdjacencyMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert essential_subgraph(A) == (None, ())

    def test_idempotent(self):
        rng = random.Random(15)
        for _ in range(30):
            n = rng.randint(1, 7)
            rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            A = AdjacencyMatrix.from_rows(rows)
            ess, _ = essential_subgraph(A)
            if ess is not None:
                again, kept = essential_subgraph(ess)
                assert again == ess and kept == tuple(range(ess.n))


class TestKroneckerProduct:
    def test_complete_times_complete(self):
        assert kronecker_product(AdjacencyMatrix.full(2), AdjacencyMatrix.full(2)) == AdjacencyMatrix.full(4)

    def test_single_loop_is_identity(self):
        A = golden_mean()
        assert kronecker_product(A, AdjacencyMatrix.from_rows([[1]])) == A

    def test_golden_squared_radius(self):
        # Product radius is the product of radii; phi squared here.
        prod = kronecker_product(golden_mean(), golden_mean())
        assert prod.n == 4
        assert spectral_radius(prod) == pytest.approx(PHI**2, abs=1e-9)


class TestGraphIsomorphic:
    def test_relabeled_two_cycle(self):
        A = AdjacencyMatrix.from_rows([[0, 1], [1, 0]])
        assert graph_isomorphic(A, A.transpose())

    def test_golden_mean_transposed_labels(self):
        assert graph_isomorphic(
            AdjacencyMatrix.from_rows([[1, 1], [1, 0]]),
            AdjacencyMatrix.from_rows([[0, 1], [1, 1]]),
        )

    def test_distinguishes_loop_placement(self):
        assert not graph_isomorphic(
            AdjacencyMatrix.from_rows([[1, 1], [1, 0]]),
            AdjacencyMatrix.from_rows([[1, 1], [0, 1]]),
        )

    def test_size_cap(self):
        with pytest.raises(SizeLimitExceeded):
            graph_isomorphic(AdjacencyMatrix.full(11), AdjacencyMatrix.full(11))

    def test_size_mismatch_is_false(self):
        assert not graph_isomorphic(AdjacencyMatrix.full(2), AdjacencyMatrix.full(3))

    def test_equivalence_relation_spot_checks(self):
        rng = random.Random(16)
        for _ in range(10):
            n = rng.randint(2, 6)
            rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            A = AdjacencyMatrix.from_rows(rows)
            assert graph_isomorphic(A, A)
            perm = list(range(n))
            rng.shuffle(perm)
            B = AdjacencyMatrix.from_rows(
                [[A.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
            )
            assert graph_isomorphic(A, B) and graph_isomorphic(B, A)
            perm2 = list(range(n))
            rng.shuffle(perm2)
            C = AdjacencyMatrix.from_rows(
                [[B.rows[perm2[i]][perm2[j]] for j in range(n)] for i in range(n)]
            )
            assert graph_isomorphic(A, C)
