import itertools
import random
from fractions import Fraction

import pytest

from oracles import best_hull_mass, clique_number, es_size_floor, mono_pair
from ramseypairs import (
    Color,
    DeclaredFailure,
    ExtractionParams,
    Graph,
    PreconditionError,
    Strictness,
    TwoColoring,
    es_pair,
    esz_pair,
    is_mono_pair,
    max_clique,
)
from ramseypairs._bits import full, mask_of, members, popcount
from ramseypairs.extraction import choose_hull, hull_mass, max_blue_clique, verify_esz_invariants
from ramseypairs.ramsey import biased_coloring, paley_coloring, uniform_coloring


def test_es_pair_k_zero_is_everything():
    c = uniform_coloring(7, seed=11)
    pair = es_pair(c, 0, 3)
    assert pair.color is Color.RED and pair.X == () and pair.Y == tuple(range(7))


def test_es_pair_all_red():
    c = TwoColoring.monochromatic(5, Color.RED)
    pair = es_pair(c, 2, 2)
    assert pair.color is Color.RED and len(pair.X) == 2
    assert is_mono_pair(c, Color.RED, pair.X, pair.Y)
    assert len(pair.Y) == 3


def test_es_pair_k6_unit_pairs():
    for bits in range(1 << 15):
        c = TwoColoring.from_bits(6, bits)
        pair = es_pair(c, 1, 1)
        assert len(pair.X) == 1 and len(pair.Y) >= 1
        assert mono_pair(c, pair.color, pair.X, pair.Y)


def test_es_pair_blue_impossible_gives_red():
    # blue graph of Paley-17 has clique number 3, so l = 4 forces red
    c = paley_coloring(17)
    for k in range(1, 4):
        pair = es_pair(c, k, 4)
        assert pair.color is Color.RED and len(pair.X) == k
        assert pair.is_valid(c)


def test_es_pair_negative_sizes():
    with pytest.raises(ValueError):
        es_pair(TwoColoring.monochromatic(3, Color.RED), -1, 2)


def test_es_pair_declares_failure_when_too_small():
    # Paley-5 holds no monochromatic triangle at all
    with pytest.raises(DeclaredFailure):
        es_pair(paley_coloring(5), 3, 3)


@pytest.mark.parametrize("N, k, l", [(12, 2, 2), (20, 2, 3), (30, 3, 3), (40, 1, 4)])
def test_es_pair_size_law_sampled(N, k, l):
    for seed in range(25):
        c = uniform_coloring(N, seed)
        pair = es_pair(c, k, l)
        assert pair.is_valid(c)
        assert len(pair.X) == (k if pair.color is Color.RED else l)
        assert len(pair.Y) >= es_size_floor(N, k, l)


def test_max_blue_clique_examples():
    blue = TwoColoring.monochromatic(7, Color.BLUE)
    assert max_blue_clique(blue, range(7), cap=4) == (0, 1, 2, 3)
    red = TwoColoring.monochromatic(7, Color.RED)
    assert len(max_blue_clique(red, range(7), cap=4)) == 1
    assert max_blue_clique(red, [], cap=4) == ()
    assert len(max_blue_clique(paley_coloring(17), range(17), cap=10)) == 3


def test_max_clique_matches_enumeration():
    rnd = random.Random(5)
    for n in range(1, 21):
        for density in (0.3, 0.5, 0.8):
            edges = [e for e in itertools.combinations(range(n), 2) if rnd.random() < density]
            g = Graph.from_edges(n, edges)
            found = max_clique(g.adj, full(n))
            assert popcount(found) == clique_number(g)
            assert all(g.has_edge(u, v) for u, v in itertools.combinations(members(found), 2))


def test_max_clique_respects_cap_and_subset():
    g = Graph.complete(10)
    assert popcount(max_clique(g.adj, full(10), cap=3)) == 3
    U = mask_of([2, 5, 7])
    assert max_clique(g.adj, U) == U


def test_choose_hull_matches_brute_force_and_tie_break():
    rnd = random.Random(17)
    for _ in range(300):
        b = rnd.randint(1, 10)
        r = rnd.randint(0, b)
        buckets = {}
        for _ in range(rnd.randint(0, 25)):
            m = mask_of(rnd.sample(range(b), rnd.randint(0, min(r + 1, b))))
            buckets[m] = buckets.get(m, 0) + rnd.randint(1, 4)
        R, method = choose_hull(buckets, b, r)
        assert method == "exact-zeta"
        assert popcount(R) == r
        assert hull_mass(buckets, R) == best_hull_mass(buckets, b, r)
        # lexicographically first optimum among sorted r-subsets
        first = next(
            mask_of(S)
            for S in itertools.combinations(range(b), r)
            if hull_mass(buckets, mask_of(S)) == hull_mass(buckets, R)
        )
        assert R == first


def test_choose_hull_fallbacks():
    buckets = {0b11: 5, 1 << 30: 2, 0: 1}
    R, method = choose_hull(buckets, 40, 10)
    assert method == "greedy" and popcount(R) == 10 and hull_mass(buckets, R) == 8
    R, method = choose_hull(buckets, 31, 2)
    assert method == "exact-enumeration" and R == 0b11
    with pytest.raises(ValueError):
        choose_hull({}, 3, 4)


def test_esz_all_blue():
    c = TwoColoring.monochromatic(12, Color.BLUE)
    pair, trace = esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=3))
    # hull size floor(18/7) = 2; with no red edges the first two vertices are taken
    assert trace.B == (0, 1, 2, 3, 4, 5) and trace.R == (0, 1)
    assert pair.color is Color.BLUE and pair.X == (2, 3, 4, 5) and pair.Y == tuple(range(6, 12))
    assert trace.branch == "blue-clique" and trace.bounds == "unchecked"


def test_esz_star_deletion_trace():
    c = TwoColoring.from_red_edges(14, [(0, v) for v in range(1, 14)])
    pair, trace = esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=2))
    assert trace.deleted == 1 and trace.S == tuple(range(1, 14))
    assert pair.is_valid(c)
    assert verify_esz_invariants(c, Fraction(1, 7), trace) == []


def test_esz_planted_density():
    c = biased_coloring(2000, Fraction(1, 10), seed=2)
    pair, trace = esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=8))
    assert pair.is_valid(c) and len(pair.X) >= 8
    assert verify_esz_invariants(c, Fraction(1, 7), trace) == []
    js = trace.to_json()
    assert js["S_size"] == len(trace.S) and js["B"] == list(trace.B)


def test_esz_es_pair_branch():
    # three disjoint red K_5: the largest blue clique has 3 < 2t vertices
    red = [(u, v) for p in range(3) for u, v in itertools.combinations(range(5 * p, 5 * p + 5), 2)]
    c = TwoColoring.from_red_edges(15, red)
    pair, trace = esz_pair(c, ExtractionParams(eps=Fraction(1, 2), t=2))
    assert trace.branch == "es-pair" and len(trace.B) == 3
    assert trace.R == trace.B  # hull size is capped at |B|
    assert (trace.es_k, trace.es_l) == (2, 7)
    assert pair.color is Color.RED and len(pair.X) == 2 and pair.is_valid(c)
    assert verify_esz_invariants(c, Fraction(1, 2), trace) == []


def test_esz_rejects_dense_red():
    c = uniform_coloring(30, seed=1)
    with pytest.raises(PreconditionError, match="red edge density"):
        esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=2))


def test_esz_paper_strictness_preconditions():
    c = TwoColoring.monochromatic(50, Color.BLUE)
    with pytest.raises(PreconditionError, match="N >= t"):
        esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=7, strictness=Strictness.PAPER))
    with pytest.raises(PreconditionError, match="t >= 1/eps"):
        esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=6, strictness=Strictness.PAPER))
    with pytest.raises(PreconditionError, match="eps <= 1/7"):
        esz_pair(c, ExtractionParams(eps=Fraction(1, 6), t=6, strictness=Strictness.PAPER))


def test_esz_small_host_declares_failure():
    c = biased_coloring(20, Fraction(1, 8), seed=31)
    with pytest.raises(DeclaredFailure) as info:
        esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=6))
    assert info.value.trace is not None and info.value.trace.branch == "es-pair"


def test_invariant_checker_catches_tampering():
    c = biased_coloring(300, Fraction(1, 10), seed=9)
    _, trace = esz_pair(c, ExtractionParams(eps=Fraction(1, 7), t=4))
    trace.S_R = trace.S_R[1:]
    assert any("S_R" in msg for msg in verify_esz_invariants(c, Fraction(1, 7), trace))
