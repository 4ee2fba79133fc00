import math
import os

import networkx as nx
import numpy as np
import pytest

from cks.community import louvain, partition_from_assignment
from cks.coreness import ShellAssignment, community_kshell
from cks.errors import InvalidParameterError
from cks.graph import Graph, read_edge_list
from cks.ranking import ScoreTable, select_seeds
from cks.scoring import build_profile, cks_score, kse, rank, rank_detailed, score_nodes
from helpers import (
    from_nx,
    k4_pendant_pair_with_bridge_node,
    oracle_cks_scores,
    planted_with_bridges,
    random_graphs,
)

LN2 = math.log(2)


def bridge_profile_graph():
    """
    Node 0 in community A = {0..4} (shells of 1..4: 1, 1, 2, 2) with one
    edge into community B = {5, 6, 7} (shell 1)
    """
    edges = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6), (6, 7)]
    g = Graph.from_edges(8, edges)
    p = partition_from_assignment([0] * 5 + [1] * 3)
    cs = ShellAssignment.from_array(np.array([2, 1, 1, 2, 2, 1, 1, 1]))
    return g, p, cs


# =====================================================
# PROFILES
# =====================================================
def test_profile_buckets_by_community_and_shell():
    g, p, cs = bridge_profile_graph()
    profile = build_profile(g, p, cs, 0)
    assert profile.eta == {0: {1: 2, 2: 2}, 1: {1: 1}}
    assert profile.communities == [0, 1]
    assert profile.eta_total(0) == 4
    assert profile.degree == 5


def test_profile_of_single_shell_neighbors():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    p = partition_from_assignment([0] * 4)
    cs = ShellAssignment.from_array(np.array([1, 2, 2, 2]))
    assert build_profile(g, p, cs, 0).eta == {0: {2: 3}}


def test_isolated_node_has_empty_profile():
    g = Graph.from_edges(3, [(0, 1)])
    p = partition_from_assignment([0, 0, 1])
    cs = community_kshell(g, p)
    assert build_profile(g, p, cs, 2).eta == {}
    assert cks_score(g, p, cs, 2) == 0.0


def test_eta_totals_add_up_to_degree(karate):
    p = louvain(karate, rng_seed=42)
    cs = community_kshell(karate, p)
    for v in range(karate.node_count):
        profile = build_profile(karate, p, cs, v)
        assert profile.degree == karate.degrees[v]


# =====================================================
# KSE
# =====================================================
def test_kse_single_shell_is_zero():
    assert kse({3: 4}) == 0.0
    assert math.copysign(1.0, kse({3: 4})) == 1.0


def test_kse_examples():
    assert kse({1: 2, 2: 2}) == pytest.approx(1.5 * LN2)
    assert kse({1: 2, 2: 2}) == pytest.approx(1.03972, abs=1e-5)
    assert kse({1: 1, 2: 3}) == pytest.approx(0.77809, abs=1e-5)


def test_kse_log_base():
    assert kse({1: 2, 2: 2}, log_base=2) == pytest.approx(1.5)


def test_kse_without_edges_is_an_error():
    with pytest.raises(InvalidParameterError):
        kse({})


def test_kse_upper_bound():
    rng = np.random.default_rng(0)
    for _ in range(50):
        shells = rng.choice(np.arange(1, 9), size=4, replace=False)
        counts = rng.integers(1, 6, size=4)
        histogram = dict(zip(shells.tolist(), counts.tolist()))
        value = kse(histogram)
        assert 0.0 <= value <= max(histogram) * math.log(len(histogram)) + 1e-12


# =====================================================
# CKS SCORE
# =====================================================
def test_cks_score_sums_over_communities():
    g, p, cs = bridge_profile_graph()
    # 5 * KSE({1: 2, 2: 2}) * 4 + 3 * 0 * 1
    assert cks_score(g, p, cs, 0) == pytest.approx(5 * 1.5 * LN2 * 4)
    assert cks_score(g, p, cs, 0) == pytest.approx(20.7944, abs=1e-4)


def test_excluding_the_own_community():
    g, p, cs = bridge_profile_graph()
    assert cks_score(g, p, cs, 0, exclude_own_community=True) == 0.0


def test_bridge_node_ranks_first():
    g, p = k4_pendant_pair_with_bridge_node()
    cs = community_kshell(g, p)
    assert cs.shell.tolist() == [3, 3, 3, 3, 2, 3, 3, 3, 3, 1, 2]

    scores = score_nodes(g, p, cs)
    table = ScoreTable.from_scores("cks", scores)
    assert scores[10] == pytest.approx(6 * 2.5 * LN2 * 2 + 5 * 2 * LN2 * 2)
    assert scores[10] == pytest.approx(34.657, abs=1e-3)
    assert scores[0] == pytest.approx(scores[1])
    assert scores[0] == pytest.approx(32.1704, abs=1e-4)
    assert scores[4] == pytest.approx(30 * LN2)
    assert scores[5] == pytest.approx(19.877, abs=1e-3)
    assert table.ranking.tolist() == [10, 0, 1, 4, 5, 2, 3, 6, 7, 8, 9]


def test_score_nodes_matches_definition():
    for g in random_graphs(20, n=48, seed=400):
        p = louvain(g, rng_seed=1)
        cs = community_kshell(g, p)
        scores = score_nodes(g, p, cs)
        expected = oracle_cks_scores(g, p)
        assert np.allclose(scores, expected, rtol=1e-9, atol=1e-12)
        ids = np.arange(g.node_count)
        assert np.array_equal(
            np.lexsort((ids, -np.round(scores, 6))),
            np.lexsort((ids, -np.round(expected, 6))),
        )


def test_scores_are_non_negative():
    g, _ = planted_with_bridges(seed=13)
    assert np.all(rank(g, rng_seed=0).scores >= 0.0)


def test_relabeling_permutes_scores():
    g, p = k4_pendant_pair_with_bridge_node()
    scores = score_nodes(g, p, community_kshell(g, p))

    perm = np.random.default_rng(9).permutation(g.node_count)
    relabeled = Graph.from_edges(g.node_count, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
    assignment = np.empty(g.node_count, dtype=np.int64)
    assignment[perm] = p.assignment
    q = partition_from_assignment(assignment)
    permuted = score_nodes(relabeled, q, community_kshell(relabeled, q))
    assert np.allclose(permuted[perm], scores)


def test_worker_count_does_not_change_scores():
    g, _ = planted_with_bridges(seed=17)
    p = louvain(g, rng_seed=0)
    cs = community_kshell(g, p)
    assert np.array_equal(score_nodes(g, p, cs, threads=1), score_nodes(g, p, cs, threads=2))


# =====================================================
# RANK
# =====================================================
def test_rank_is_the_louvain_pipeline(karate):
    p = louvain(karate, rng_seed=7)
    expected = score_nodes(karate, p, community_kshell(karate, p))
    table = rank(karate, rng_seed=7)
    assert table.method == "cks"
    assert np.array_equal(table.scores, expected)


def test_rank_is_reproducible(karate):
    first = rank(karate, rng_seed=3)
    second = rank(karate, rng_seed=3)
    assert np.array_equal(first.scores, second.scores)
    assert np.array_equal(first.ranking, second.ranking)


def test_clique_scores_zero_and_ranks_by_id(k5):
    table = rank(k5, rng_seed=0)
    assert np.all(table.scores == 0.0)
    assert table.ranking.tolist() == [0, 1, 2, 3, 4]


def test_two_cliques_with_bridge_edge_score_zero(two_k4):
    # every edge lands on shell 3 of its community
    table = rank(two_k4, rng_seed=0)
    assert np.all(table.scores == 0.0)


def test_log_base_keeps_the_ranking(karate):
    natural = rank(karate, rng_seed=2)
    base2 = rank(karate, rng_seed=2, log_base=2)
    assert np.allclose(base2.scores, natural.scores / LN2)
    assert np.array_equal(
        np.lexsort((np.arange(34), -np.round(base2.scores, 6))),
        np.lexsort((np.arange(34), -np.round(natural.scores / LN2, 6))),
    )


def test_top_node_of_karate_spans_communities(karate):
    detail = rank_detailed(karate, rng_seed=42)
    top = int(detail.table.ranking[0])
    profile = build_profile(karate, detail.partition, detail.community_shells, top)
    assert len(profile.communities) >= 2
    assert detail.seconds >= 0.0


def test_exclude_own_community_variant(karate):
    table = rank(karate, rng_seed=42, exclude_own_community=True)
    assert table.method == "cks-exclude-own"
    full = rank(karate, rng_seed=42)
    assert np.all(table.scores <= full.scores + 1e-9)


@pytest.mark.parametrize("graph_seed", [3, 4])
def test_top_node_of_planted_partition_is_a_bridge(graph_seed):
    g, bridges = planted_with_bridges(seed=graph_seed)
    for seed in range(5):
        assert int(rank(g, rng_seed=seed).ranking[0]) in bridges


# =====================================================
# SEEDS
# =====================================================
def test_select_seeds_bounds(karate):
    table = rank(karate, rng_seed=0)
    assert select_seeds(table, 1) == [int(table.ranking[0])]
    assert sorted(select_seeds(table, 34)) == list(range(34))
    with pytest.raises(InvalidParameterError):
        select_seeds(table, 0)
    with pytest.raises(InvalidParameterError):
        select_seeds(table, 35)


def test_ties_break_by_ascending_id():
    table = ScoreTable.from_scores("x", [1.0, 3.0, 1.0, 3.0, 0.0])
    assert table.ranking.tolist() == [1, 3, 0, 2, 4]


@pytest.mark.slow
@pytest.mark.skipif(
    not os.environ.get("EMAIL_UNIV_PATH"),
    reason="set EMAIL_UNIV_PATH to the email-univ edge list",
)
def test_email_univ_ranks_within_ten_seconds():
    g = read_edge_list(os.environ["EMAIL_UNIV_PATH"])
    detail = rank_detailed(g, rng_seed=42, threads=1)
    assert detail.table.node_count == 1133
    assert detail.seconds < 10.0


@pytest.mark.slow
def test_fifty_thousand_nodes_rank_within_budget():
    G = nx.random_partition_graph([500] * 100, 0.02, 0.00004, seed=1)
    g = from_nx(G)
    detail = rank_detailed(g, rng_seed=42, threads=1)
    assert detail.table.node_count == 50000
    assert detail.seconds < 120.0
