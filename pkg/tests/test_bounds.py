from fractions import Fraction
from math import isqrt

import pytest

from oracles import mono_triangle
from ramseypairs import (
    Color,
    Graph,
    InvalidSizeError,
    es_clique_bound_check,
    expected_mono_cliques,
    find_mono_copy,
    lower_bound_witness_search,
    verify_inequalities,
)
from ramseypairs.bounds import first_moment_threshold


@pytest.fixture(scope="module")
def sweep():
    return {ch.name: ch for ch in verify_inequalities()}


def test_every_default_check_passes(sweep):
    assert list(sweep) == [
        "ratio_7eps_over_e",
        "pow_1.2_7",
        "binomial_entropy",
        "closing_chain",
        "reading_t_bound",
        "alpha_tail_48",
        "size_chain",
        "alpha_growth",
        "alpha_growth_equality",
        "sum_bound",
        "reading_geometric_sign",
        "exponent_ledger",
    ]
    assert all(ch.passed for ch in sweep.values())


def test_methods_are_declared(sweep):
    assert sweep["pow_1.2_7"].method == "exact"
    assert sweep["pow_1.2_7"].note == "1.2^7=279936/78125"
    assert Fraction(279936, 78125) == Fraction(6, 5) ** 7 >= Fraction(7, 2)
    assert sweep["alpha_growth_equality"].method == "exact"
    assert sweep["ratio_7eps_over_e"].method == "outward-rounded"


def test_grid_sizes(sweep):
    assert sweep["alpha_tail_48"].points == 4 * 200
    assert sweep["binomial_entropy"].points == 64 * 65 // 2
    assert sweep["sum_bound"].points == 50


def test_typo_readings_are_reported(sweep):
    t_check = sweep["reading_t_bound"]
    assert t_check.reading == "t>=1/eps"
    assert "t<=1/eps fails at eps=1/7,t=1" in t_check.note
    sign = sweep["reading_geometric_sign"]
    assert sign.reading.startswith("(3/4)^(+j)")
    assert "(3/4)^(-j) fails at i=1:7/9>1/3" in sign.note


def test_alpha_tail_at_27_by_hand():
    # 42 * 3 / 2^3 = 15.75 <= 48 / 3 = 16
    assert Fraction(42 * 3, 8) == Fraction(63, 4) < 16


def test_sweep_is_replayable():
    a = [ch.to_json() for ch in verify_inequalities(m_values=(3600,), alpha_points=20)]
    b = [ch.to_json() for ch in verify_inequalities(m_values=(3600,), alpha_points=20)]
    assert a == b


def test_sweep_rejects_out_of_range_grids():
    with pytest.raises(ValueError):
        verify_inequalities(m_values=(100,))
    with pytest.raises(ValueError):
        verify_inequalities(eps_grid=(Fraction(1, 6),))
    with pytest.raises(ValueError):
        verify_inequalities(eps_grid=(Fraction(0),))


def test_expected_mono_cliques_examples():
    assert expected_mono_cliques(8, 6) == Fraction(7, 4096)
    assert expected_mono_cliques(2, 3) == 0
    # K_6 has 20 triangles, each monochromatic with probability 1/4
    assert expected_mono_cliques(6, 3) == 5


def test_expected_mono_cliques_monotone_in_n():
    for n in (3, 5, 9):
        values = [expected_mono_cliques(N, n) for N in range(0, 60)]
        assert values == sorted(values)


def test_first_moment_threshold():
    assert [first_moment_threshold(n) for n in (3, 4, 6, 7)] == [2, 4, 8, 11]
    for n in range(3, 41):
        N = first_moment_threshold(n)
        assert N == isqrt(2**n)
        assert expected_mono_cliques(N, n) < 1


def test_witness_search():
    K3 = Graph.complete(3)
    c = lower_bound_witness_search(K3, 5, trials=200, seed=1)
    assert c is not None and not mono_triangle(c)
    assert find_mono_copy(c, Color.RED, K3) is None and find_mono_copy(c, Color.BLUE, K3) is None
    assert lower_bound_witness_search(K3, 6, trials=50, seed=1) is None
    assert lower_bound_witness_search(Graph.complete(2), 2, trials=5, seed=0) is None
    with pytest.raises(InvalidSizeError):
        lower_bound_witness_search(K3, 2, trials=5, seed=0)


def test_witness_search_is_seeded():
    K3 = Graph.complete(3)
    assert lower_bound_witness_search(K3, 5, 200, 9) == lower_bound_witness_search(K3, 5, 200, 9)


def test_es_clique_bound_check():
    k6 = es_clique_bound_check(3)
    assert k6.passed is True and k6.domain == "all_2^15_colorings_of_K_6" and k6.method == "exact"
    k5 = es_clique_bound_check(3, N=5)
    assert k5.passed is False
    assert k5.counterexample == "red=0-3,0-4,1-2,1-4,2-3"  # a red 5-cycle
    assert es_clique_bound_check(2).passed is True
    assert es_clique_bound_check(2, N=6).passed is True
    assert es_clique_bound_check(4).passed is None
