import numpy as np
import pytest

import graphs
import oracles
from netmedian.centrality import (
    DETERMINISTIC_METHODS,
    METHOD_ORDER,
    MethodId,
    ScoreVector,
    core_numbers,
    coreness_scores,
    degree_scores,
    extended_coreness_scores,
    extended_degree_scores,
    h_index_scores,
    pagerank_scores,
    random_candidate,
    rank_by_method,
    top_k,
    voterank,
    voterank_with_state,
)
from netmedian.errors import ConvergenceError
from netmedian.rng import SplitMix64


def test_method_order_is_the_documented_one():
    assert [m.value for m in METHOD_ORDER] == [
        "degree", "degree+", "prank", "vrank", "core", "core+", "hindex", "random",
    ]
    assert MethodId.RANDOM not in DETERMINISTIC_METHODS


# ---- top_k ----------------------------------------------------------------

def test_top_k_breaks_ties_by_id():
    assert top_k(np.array([5, 9, 9, 1]), 2).vertices == (1, 2)


def test_top_k_full_length_is_stable_sort():
    ranked = top_k(np.array([1.0, 3.0, 3.0, 2.0]), 4)
    assert ranked.vertices == (1, 2, 3, 0)


def test_top_k_matches_sort_oracle():
    rng = SplitMix64(77)
    for _ in range(50):
        n = 3 + rng.below(20)
        scores = np.array([rng.below(6) for _ in range(n)], dtype=np.float64)
        k = 1 + rng.below(n)
        expected = sorted(range(n), key=lambda v: (-scores[v], v))[:k]
        assert list(top_k(scores, k).vertices) == expected


def test_top_k_invariant_under_increasing_transform():
    rng = SplitMix64(78)
    for _ in range(20):
        n = 4 + rng.below(15)
        scores = np.array([rng.below(5) for _ in range(n)], dtype=np.float64)
        k = 1 + rng.below(n)
        assert top_k(scores, k).vertices == top_k(2 * scores + 1, k).vertices


def test_top_k_validates_k(path3):
    with pytest.raises(ValueError):
        top_k(np.array([1.0, 2.0, 3.0]), 0)
    with pytest.raises(ValueError):
        top_k(np.array([1.0, 2.0, 3.0]), 4)


def test_score_vector_rejects_non_finite():
    with pytest.raises(ValueError):
        ScoreVector(scores=np.array([1.0, np.nan]))


# ---- degree family ---------------------------------------------------------

def test_degree_scores(star5, triangle):
    assert degree_scores(star5).scores.tolist() == [4, 1, 1, 1, 1]
    assert degree_scores(triangle).scores.tolist() == [2, 2, 2]


def test_extended_degree_scores(path3, triangle, star5):
    assert extended_degree_scores(path3).scores.tolist() == [2, 2, 2]
    assert extended_degree_scores(triangle).scores.tolist() == [4, 4, 4]
    assert extended_degree_scores(star5).scores.tolist() == [4, 4, 4, 4, 4]


# ---- pagerank --------------------------------------------------------------

def test_pagerank_regular_graphs_are_flat(cycle6, k4, petersen):
    for g in (cycle6, k4, petersen):
        scores = pagerank_scores(g).scores
        assert np.max(np.abs(scores - 1.0)) < 1e-8


def test_pagerank_star_fixed_point(star5):
    # solve the 2-unknown fixed point: c = 0.15 + 3.4 l, l = 0.15 + 0.2125 c
    center = 0.66 / 0.2775
    leaf = 0.15 + 0.2125 * center
    scores = pagerank_scores(star5).scores
    assert scores[0] == pytest.approx(center, abs=1e-6)
    assert scores[1:] == pytest.approx(leaf, abs=1e-6)
    assert scores[0] == pytest.approx(2.3784, abs=1e-4)
    assert scores[1] == pytest.approx(0.6554, abs=1e-4)


def test_pagerank_star_center_ranks_first():
    for leaves in (3, 10, 31):
        g = graphs.star(leaves)
        assert top_k(pagerank_scores(g), 1).vertices == (0,)


def test_pagerank_matches_linear_solve_oracle():
    for seed in range(3):
        g = graphs.random_connected(12, 16, seed=seed)
        expected = oracles.pagerank_solve(g)
        assert pagerank_scores(g).scores == pytest.approx(expected, abs=1e-8)


def test_pagerank_floor_and_validation(petersen):
    scores = pagerank_scores(petersen, damping=0.85).scores
    assert (scores >= 0.15 - 1e-12).all()
    with pytest.raises(ValueError):
        pagerank_scores(petersen, damping=1.0)


def test_pagerank_nonconvergence_reports_residual(star5):
    with pytest.raises(ConvergenceError) as excinfo:
        pagerank_scores(star5, max_iters=2)
    assert excinfo.value.iterations == 2
    assert excinfo.value.residual > 0


# ---- voterank --------------------------------------------------------------

def test_voterank_first_picks(star5, path3):
    assert voterank(star5, 1).vertices == (0,)
    assert voterank(path3, 1).vertices == (1,)


def test_voterank_star_trace(star5):
    # round 1: hub has 4 votes; afterwards every leaf's score is 0 and the
    # tie falls to the smallest unelected id
    assert voterank(star5, 2).vertices == (0, 1)


def test_voterank_winner_state_zeroed(star5):
    ranked, state = voterank_with_state(star5, 1)
    winner = ranked.vertices[0]
    assert state.scores[winner] == 0.0
    assert state.voting_power[winner] == 0.0
    assert state.suppression == pytest.approx(1 / 1.6)
    assert ((state.voting_power >= 0) & (state.voting_power <= 1)).all()


def test_voterank_suppression_override(star5):
    _, state = voterank_with_state(star5, 1, suppression=0.25)
    assert state.suppression == 0.25
    assert state.voting_power[1] == pytest.approx(0.75)


def test_voterank_returns_distinct_and_prefix_consistent():
    for seed in range(3):
        g = graphs.random_connected(20, 30, seed=seed)
        full = voterank(g, 12).vertices
        assert len(set(full)) == 12
        for k in (1, 4, 9):
            assert voterank(g, k).vertices == full[:k]


def test_voterank_validates_k(path3):
    with pytest.raises(ValueError):
        voterank(path3, 0)
    with pytest.raises(ValueError):
        voterank(path3, 4)


# ---- core family -----------------------------------------------------------

def test_core_numbers_small_graphs(triangle, star5, k4):
    assert core_numbers(triangle).scores.tolist() == [2, 2, 2]
    assert core_numbers(star5).scores.tolist() == [1, 1, 1, 1, 1]
    assert core_numbers(k4).scores.tolist() == [3, 3, 3, 3]


def test_core_numbers_match_naive_peeling():
    for seed in range(6):
        g = graphs.random_connected(18, 30, seed=seed)
        assert core_numbers(g).scores.tolist() == oracles.core_numbers_naive(g)


def test_core_decomposition_self_consistent():
    # inside the c(v)-core each vertex keeps >= c(v) neighbors
    g = graphs.random_connected(25, 50, seed=4)
    core = core_numbers(g).scores
    for v in range(g.vertex_count):
        members = [u for u in g.neighbors(v) if core[u] >= core[v]]
        assert len(members) >= core[v]


def test_coreness_scores(triangle, star5):
    assert coreness_scores(triangle).scores.tolist() == [4, 4, 4]
    assert coreness_scores(star5).scores.tolist() == [4, 1, 1, 1, 1]


def test_coreness_matches_recomputation_from_naive_cores():
    for seed in range(4):
        g = graphs.random_connected(15, 25, seed=seed)
        naive = oracles.core_numbers_naive(g)
        expected = [sum(naive[u] for u in g.neighbors(v)) for v in range(g.vertex_count)]
        assert coreness_scores(g).scores.tolist() == expected


def test_extended_coreness_scores(triangle, star5, path3):
    assert extended_coreness_scores(triangle).scores.tolist() == [8, 8, 8]
    assert extended_coreness_scores(star5).scores.tolist() == [4, 4, 4, 4, 4]
    assert coreness_scores(path3).scores.tolist() == [1, 2, 1]
    assert extended_coreness_scores(path3).scores.tolist() == [2, 2, 2]


# ---- H-index ---------------------------------------------------------------

def test_h_index_worked_example():
    # one vertex whose five neighbors have degrees {13, 16, 27, 9, 2} -> 4
    edges = []
    hub = 0
    next_id = 6
    for i, degree in enumerate([13, 16, 27, 9, 2], start=1):
        edges.append((hub, i))
        for _ in range(degree - 1):
            edges.append((i, next_id))
            next_id += 1
    g = graphs.from_edges(edges)
    assert g.degree(0) == 5
    assert sorted(g.degree(int(u)) for u in g.neighbors(0)) == [2, 9, 13, 16, 27]
    assert int(h_index_scores(g).scores[0]) == 4


def test_h_index_small_graphs(star5, k4):
    assert int(h_index_scores(star5).scores[0]) == 1
    assert h_index_scores(k4).scores.tolist() == [3, 3, 3, 3]


def test_h_index_matches_naive():
    for seed in range(6):
        g = graphs.random_connected(22, 40, seed=seed)
        assert h_index_scores(g).scores.tolist() == oracles.h_index_naive(g)


def test_core_h_degree_sandwich():
    for seed in range(6):
        g = graphs.random_connected(20, 35, seed=seed)
        core = core_numbers(g).scores
        h = h_index_scores(g).scores
        deg = g.degrees()
        assert (core <= h).all()
        assert (h <= deg).all()


# ---- random baseline -------------------------------------------------------

def test_random_candidate_determinism_and_full_set(path3):
    g = graphs.random_connected(10, 12, seed=0)
    assert random_candidate(g, 3, seed=9).vertices == random_candidate(g, 3, seed=9).vertices
    assert sorted(random_candidate(path3, 3, seed=1).vertices) == [0, 1, 2]
    with pytest.raises(ValueError):
        random_candidate(path3, 4, seed=0)


def test_random_candidate_uniform_chi_square():
    scipy_stats = pytest.importorskip("scipy.stats")
    g = graphs.random_connected(10, 12, seed=0)
    counts = [0] * 10
    for i in range(100_000):
        counts[random_candidate(g, 1, seed=i).vertices[0]] += 1
    expected = 100_000 / 10
    statistic = sum((c - expected) ** 2 / expected for c in counts)
    assert statistic < scipy_stats.chi2.ppf(0.999, df=9)


# ---- dispatch --------------------------------------------------------------

def test_rank_by_method_dispatches_everything():
    g = graphs.random_connected(15, 25, seed=1)
    for method in METHOD_ORDER:
        ranked = rank_by_method(g, method, 5, seed=3)
        assert ranked.method == method
        assert len(set(ranked.vertices)) == 5


def test_rank_by_method_star_hubs(star5):
    for method in DETERMINISTIC_METHODS:
        if method in (MethodId.DEGREE_PLUS, MethodId.CORE_PLUS, MethodId.H_INDEX):
            continue  # flat scores on a star; tie falls to vertex 0 anyway
        assert rank_by_method(star5, method, 1).vertices == (0,)
