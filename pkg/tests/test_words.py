"""Word counting, enumeration, block codes, growth rates, bruteforce route.

The enumeration-based values asserted here were computed with the
independent filters defined in this file (forbidden-factor scans over all
words of the full shift) before being frozen.
"""

import itertools
import math
import random

import pytest

from conftest import random_essential_graph, random_primitive_graph, random_surjection
from qent import (
    AdjacencyMatrix,
    CapExceeded,
    EmptySubshift,
    SlidingBlockCode,
    VertexSurjection,
    apply_block_code,
    compose_surjections,
    count_words,
    count_words_range,
    entropy,
    enumerate_image_words,
    enumerate_words,
    growth_rate,
    image_word_count,
    image_word_counts,
    is_admissible,
    quotient_entropy_bruteforce,
)
from qent.zoo import cycle, even_shift_collapse, even_shift_cover, full_shift, golden_mean

PHI = (1 + 5**0.5) / 2


def words_avoiding_adjacent_pair(length, alphabet, forbidden):
    """All words over the alphabet without the forbidden adjacent pair."""
    return [
        w
        for w in itertools.product(alphabet, repeat=length)
        if all((a, b) != forbidden for a, b in zip(w, w[1:]))
    ]


def has_odd_zero_gap(word):
    """True if some maximal run of 0s strictly between two 1s has odd length."""
    gap = None
    for s in word:
        if s == 1:
            if gap is not None and gap % 2 == 1:
                return True
            gap = 0
        elif gap is not None:
            gap += 1
    return False


class TestCountWords:
    def test_full_two_shift(self):
        assert count_words(full_shift(2), 5) == 32

    def test_two_cycle(self):
        assert count_words(cycle(2), 7) == 2

    def test_golden_mean_fibonacci(self):
        # Oracle: enumerate binary words avoiding the pair (1, 1).
        assert len(words_avoiding_adjacent_pair(5, (0, 1), (1, 1))) == 13
        assert count_words(golden_mean(), 5) == 13

    def test_length_one_counts_essential_vertices(self):
        A = AdjacencyMatrix.from_rows([[1, 1], [0, 0]])
        assert count_words(A, 1) == 1

    def test_full_shift_counts_exactly(self):
        for k in (2, 3, 4):
            for n in (1, 5, 20):
                assert count_words(full_shift(k), n) == k**n

    def test_big_counts_are_exact_integers(self):
        # 4^40 does not fit in 64 bits; exactness is the point.
        assert count_words(full_shift(4), 41) == 4**41

    def test_empty_raises(self):
        with pytest.raises(EmptySubshift):
            count_words(AdjacencyMatrix.from_rows([[0]]), 3)

    def test_range_matches_single_calls(self):
        A = golden_mean()
        assert count_words_range(A, 8) == [count_words(A, n) for n in range(1, 9)]


class TestEnumerateWords:
    def test_full_two_shift_pairs(self):
        assert enumerate_words(full_shift(2), 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_golden_mean_triples(self):
        words = enumerate_words(golden_mean(), 3)
        assert words == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
        assert words == sorted(words_avoiding_adjacent_pair(3, (0, 1), (1, 1)))

    def test_two_cycle_triples(self):
        assert enumerate_words(cycle(2), 3) == [(0, 1, 0), (1, 0, 1)]

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_words(full_shift(2), 10, cap=100)

    def test_count_and_admissibility_agree(self):
        rng = random.Random(31)
        for _ in range(15):
            A = random_essential_graph(rng, max_n=5)
            n = rng.randint(1, 6)
            words = enumerate_words(A, n)
            assert len(words) == count_words(A, n)
            assert words == sorted(words)
            assert all(is_admissible(A, w) for w in words)


class TestApplyBlockCode:
    def test_zero_memory_identity(self):
        code = SlidingBlockCode.zero_memory(VertexSurjection.identity(3))
        word = (0, 2, 1, 1, 0)
        assert apply_block_code(code, word) == word

    def test_even_shift_collapse_code(self):
        # Vertex order (0b, 0a, 1); both zero vertices map to symbol 0.
        code = SlidingBlockCode.zero_memory(even_shift_collapse())
        assert apply_block_code(code, (0, 2, 2, 1)) == (0, 1, 1, 0)

    def test_majority_of_three(self):
        table = {
            w: (0 if sum(1 for s in w if s == 0) >= 2 else 1)
            for w in itertools.product((0, 1), repeat=3)
        }
        code = SlidingBlockCode(1, 2, 2, table)
        # Windows of (0,0,1,1,1): (0,0,1) -> 0, (0,1,1) -> 1, (1,1,1) -> 1.
        assert apply_block_code(code, (0, 0, 1, 1, 1)) == (0, 1, 1)

    def test_word_shorter_than_window(self):
        table = {w: 0 for w in itertools.product((0, 1), repeat=3)}
        code = SlidingBlockCode(1, 2, 1, table)
        with pytest.raises(ValueError):
            apply_block_code(code, (0, 1))

    def test_table_must_be_total(self):
        with pytest.raises(ValueError):
            SlidingBlockCode(0, 2, 2, {(0,): 0})

    def test_zero_memory_locality(self):
        # Output symbol t depends on input symbol t only.
        rng = random.Random(32)
        f = random_surjection(rng, 4)
        code = SlidingBlockCode.zero_memory(f)
        for _ in range(10):
            w = tuple(rng.randrange(4) for _ in range(8))
            assert apply_block_code(code, w) == tuple(f(s) for s in w)


class TestImageWordCount:
    def test_identity_map_counts_words(self):
        rng = random.Random(33)
        for _ in range(10):
            A = random_essential_graph(rng, max_n=5)
            n = rng.randint(1, 6)
            f = VertexSurjection.identity(A.n)
            assert image_word_count(A, f, n) == count_words(A, n)

    def test_full_four_shift_collapse(self):
        # The quotient is the full 2-shift: every binary word is an image.
        assert image_word_count(full_shift(4), VertexSurjection(2, (0, 1, 1, 0)), 6) == 64

    def test_even_shift_length_four(self):
        # Two independent oracles agree on 12: mapping all 13 admissible
        # cover words through the collapse, and filtering binary words by
        # the defining constraint (no odd run of 0s between two 1s).
        A, f = even_shift_cover(), even_shift_collapse()
        language = [
            w for w in itertools.product((0, 1), repeat=4) if not has_odd_zero_gap(w)
        ]
        assert len(language) == 12
        assert sorted(language) == enumerate_image_words(A, f, 4)
        assert image_word_count(A, f, 4, method="enumerate") == 12
        assert image_word_count(A, f, 4, method="automaton") == 12

    def test_even_shift_language_at_all_small_lengths(self):
        # The image language of the cover is exactly the even-gap language;
        # this pins down the reading of the cover's edge list.
        A, f = even_shift_cover(), even_shift_collapse()
        for n in range(1, 11):
            language = sorted(
                w for w in itertools.product((0, 1), repeat=n) if not has_odd_zero_gap(w)
            )
            assert enumerate_image_words(A, f, n) == language
            assert image_word_counts(A, f, n)[n - 1] == len(language)

    def test_routes_agree_on_random_instances(self):
        rng = random.Random(34)
        for _ in range(25):
            A = random_essential_graph(rng, max_n=5)
            f = random_surjection(rng, A.n)
            n = rng.randint(1, 7)
            assert image_word_count(A, f, n, method="enumerate") == image_word_count(
                A, f, n, method="automaton"
            )

    def test_never_exceeds_word_count(self):
        rng = random.Random(35)
        for _ in range(20):
            A = random_essential_graph(rng, max_n=5)
            f = random_surjection(rng, A.n)
            n = rng.randint(1, 8)
            assert image_word_count(A, f, n) <= count_words(A, n)

    def test_coarsening_never_increases_image_counts(self):
        rng = random.Random(36)
        for _ in range(20):
            A = random_essential_graph(rng, max_n=5)
            f0 = random_surjection(rng, A.n)
            p = random_surjection(rng, f0.codomain_size)
            f1 = compose_surjections(p, f0)
            for n in (2, 4, 6):
                assert image_word_count(A, f0, n) >= image_word_count(A, f1, n)

    def test_auto_escalates_past_the_enumeration_cap(self):
        A, f = full_shift(4), VertexSurjection(2, (0, 1, 1, 0))
        # 4^12 raw words is far over this cap; the automaton takes over.
        assert image_word_count(A, f, 12, enumeration_cap=1000) == 2**12

    def test_enumerate_respects_cap(self):
        with pytest.raises(CapExceeded):
            image_word_count(
                full_shift(4), VertexSurjection(2, (0, 1, 1, 0)), 12,
                method="enumerate", enumeration_cap=1000,
            )


class TestGrowthRate:
    def test_geometric(self):
        assert growth_rate([2, 4, 8, 16, 32]).estimate == pytest.approx(math.log(2), abs=1e-12)

    def test_constant(self):
        assert growth_rate([1, 1, 1, 1]).estimate == 0.0

    def test_fibonacci_counts(self):
        rate = growth_rate([2, 3, 5, 8, 13, 21, 34])
        assert rate.estimate == pytest.approx(math.log(34 / 21), abs=1e-12)
        assert abs(rate.estimate - math.log(PHI)) < 0.02

    def test_normalized_diagnostics(self):
        rate = growth_rate([2, 4, 8], first_length=1)
        assert rate.normalized == pytest.approx(
            (math.log(2), math.log(4) / 2, math.log(8) / 3)
        )

    def test_zero_count_is_an_error(self):
        with pytest.raises(ValueError):
            growth_rate([4, 0, 2])

    def test_needs_two_counts(self):
        with pytest.raises(ValueError):
            growth_rate([5])


class TestQuotientEntropyBruteforce:
    def test_full_four_shift_collapse_is_exact(self):
        # Image counts double at every length, so the ratio is exactly 2.
        report = quotient_entropy_bruteforce(full_shift(4), VertexSurjection(2, (0, 1, 1, 0)), 12)
        assert report.value == pytest.approx(math.log(2), abs=1e-9)
        assert report.method == "bruteforce"

    def test_identity_on_golden_mean(self):
        report = quotient_entropy_bruteforce(golden_mean(), VertexSurjection.identity(2), 20)
        assert abs(report.value - math.log(PHI)) < 0.01

    def test_even_shift_collapse(self):
        report = quotient_entropy_bruteforce(even_shift_cover(), even_shift_collapse(), 20)
        assert abs(report.value - math.log(PHI)) < 0.02

    def test_needs_enough_lengths(self):
        with pytest.raises(ValueError):
            quotient_entropy_bruteforce(golden_mean(), VertexSurjection.identity(2), 3)

    def test_identity_estimates_entropy(self):
        # On primitive graphs the ratio estimator converges geometrically,
        # so length 40 sits well inside a 0.05 budget.
        rng = random.Random(37)
        for _ in range(10):
            A = random_primitive_graph(rng, max_n=6)
            report = quotient_entropy_bruteforce(A, VertexSurjection.identity(A.n), 40)
            assert abs(report.value - entropy(A).value) <= 0.05
