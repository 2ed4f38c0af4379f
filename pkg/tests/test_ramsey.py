import itertools
from fractions import Fraction
from math import comb, isqrt

import pytest

from oracles import clique_number, has_copy
from ramseypairs import (
    Color,
    Graph,
    ResourceLimitError,
    TwoColoring,
    arrows,
    find_mono_copy,
    gen_coloring,
    paley_coloring,
    ramsey_number_exact,
)
from ramseypairs import rng
from ramseypairs.ramsey import biased_coloring, uniform_coloring

K2, K3 = Graph.complete(2), Graph.complete(3)
P3, P4 = Graph.path(3), Graph.path(4)


def _no_mono_copy(c, pattern):
    return all(find_mono_copy(c, color, pattern, node_limit=None) is None for color in Color)


def test_arrows_k3():
    assert arrows(6, K3).arrows
    five = arrows(5, K3)
    assert not five.arrows
    # the lexicographically least witness: a red 5-cycle 0-3-2-1-4-0
    assert sorted(five.witness.red.edges) == [(0, 3), (0, 4), (1, 2), (1, 4), (2, 3)]
    assert five.witness.red.degrees == (2,) * 5
    assert _no_mono_copy(five.witness, K3)


def test_arrows_k2():
    for N in range(2, 8):
        assert arrows(N, K2).arrows
    assert not arrows(1, K2).arrows


@pytest.mark.parametrize(
    "pattern, expected",
    [(K3, 6), (P3, 3), (P4, 5), (K2, 2), (Graph.star(3), 6), (Graph.cycle(4), 6)],
)
def test_ramsey_numbers(pattern, expected):
    assert ramsey_number_exact(pattern, n_max=7) == expected
    below = arrows(expected - 1, pattern)
    assert not below.arrows and _no_mono_copy(below.witness, pattern)


def test_ramsey_unknown_within_reach():
    assert ramsey_number_exact(K3, n_max=5) is None


def test_ramsey_rejects_isolated_vertices():
    with pytest.raises(ValueError):
        ramsey_number_exact(Graph.from_edges(3, [(0, 1)]), 5)


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        arrows(9, K3)
    assert arrows(9, K2, max_edges=36).arrows


def test_isomorphism_rejection_does_not_change_answers():
    for pattern in (K3, P3, P4, Graph.star(3), Graph.cycle(4)):
        for N in range(2, 7):
            with_rej = arrows(N, pattern)
            without = arrows(N, pattern, iso_rejection=False)
            assert with_rej.arrows == without.arrows
            assert with_rej.witness == without.witness
            assert with_rej.nodes <= without.nodes


def test_arrows_against_brute_force_k4():
    patterns = [K2, P3, K3, Graph.star(3), P4, Graph.cycle(4)]
    for pattern in patterns:
        for N in range(pattern.n, 5):
            truth = all(
                has_copy(c.red.has_edge, N, pattern) or has_copy(c.blue.has_edge, N, pattern)
                for c in (TwoColoring.from_bits(N, b) for b in range(1 << comb(N, 2)))
            )
            assert arrows(N, pattern).arrows == truth


def test_arrows_monotone():
    for pattern in (P3, P4, K3):
        answers = [arrows(N, pattern).arrows for N in range(pattern.n, 8)]
        assert answers == sorted(answers)


def test_toy_scale_ledger():
    # 2^(250 isqrt(m)) <= 2^(250 sqrt(m)), so this is a sufficient integer test
    for pattern, r in ((K3, 6), (P3, 3), (P4, 5)):
        assert ramsey_number_exact(pattern, 7) == r < 2 ** (250 * isqrt(pattern.m))


def test_paley_5_and_17():
    assert sorted(paley_coloring(5).red.edges) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    c = paley_coloring(17)
    assert clique_number(c.red) == clique_number(c.blue) == 3
    assert _no_mono_copy(c, Graph.complete(4))


@pytest.mark.parametrize("N", [4, 7, 9, 15, 1])
def test_paley_needs_prime_one_mod_four(N):
    with pytest.raises(ValueError):
        paley_coloring(N)


def test_biased_extremes():
    assert biased_coloring(9, Fraction(0), seed=3).red.m == 0
    assert biased_coloring(9, Fraction(1), seed=3).red.m == comb(9, 2)
    with pytest.raises(ValueError):
        biased_coloring(5, Fraction(3, 2), seed=0)


def test_biased_threshold_rule():
    N, p, seed = 12, Fraction(1, 3), 42
    c = biased_coloring(N, p, seed)
    words = rng.block(seed, 0, comb(N, 2))
    for i, (u, v) in enumerate(itertools.combinations(range(N), 2)):
        expected = int(words[i]) * p.denominator < p.numerator * 2**64
        assert c.red.has_edge(u, v) == expected


def test_uniform_bit_layout():
    N, seed = 10, 77
    bits = rng.bits(seed, 0, N * N)
    c = uniform_coloring(N, seed)
    for u, v in itertools.combinations(range(N), 2):
        assert c.red.has_edge(u, v) == bool(bits[u * N + v])
    # trial j reads the j-th block of ceil(N^2/64) words
    second = uniform_coloring(N, seed, trial=1)
    later = rng.bits(seed, rng.words_for_bits(N * N), N * N)
    assert all(second.red.has_edge(u, v) == bool(later[u * N + v]) for u, v in itertools.combinations(range(N), 2))


def test_gen_coloring_dispatch():
    assert gen_coloring("uniform", 8, seed=5) == uniform_coloring(8, 5)
    assert gen_coloring("biased", 8, Fraction(1, 4), seed=5) == biased_coloring(8, Fraction(1, 4), 5)
    assert gen_coloring("paley", 13) == paley_coloring(13)
    with pytest.raises(ValueError):
        gen_coloring("biased", 8)
    with pytest.raises(ValueError):
        gen_coloring("striped", 8)
