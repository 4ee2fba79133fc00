"""
CKS (Community K-Shell) centrality for influence maximization

Community-aware core decomposition, K-Shell Entropy bridge scoring, baseline
centralities and a Monte-Carlo Independent Cascade harness.
"""

from cks.community import CommunityPartition, isolate_communities, louvain, modularity
from cks.coreness import ShellAssignment, community_kshell, kshell
from cks.diffusion import DiffusionConfig, DiffusionOutcome, exact_expected_spread, ic_run, monte_carlo
from cks.errors import CKSError, GraphParseError, InvalidParameterError
from cks.graph import Graph, bfs_distances, degree, parse_edge_list, read_edge_list
from cks.ranking import CentralityResult, ScoreTable, select_seeds
from cks.scoring import CommunityProfile, build_profile, cks_score, kse, rank
