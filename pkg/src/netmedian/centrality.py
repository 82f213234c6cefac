"""Per-vertex scoring heuristics and deterministic top-k selection.

Seven deterministic selection rules (degree, extended degree, PageRank,
VoteRank, coreness, extended coreness, H-index) plus a seeded uniform-random
baseline.  Score ties are always broken by ascending vertex id so rankings
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import ConvergenceError
from .evaluation import CandidateSet
from .graph import Graph
from .rng import SplitMix64


class MethodId(str, Enum):
    """Closed set of selection methods; declaration order is the canonical
    tie-break order used in comparison tables."""

    DEGREE = "degree"
    DEGREE_PLUS = "degree+"
    PAGERANK = "prank"
    VOTERANK = "vrank"
    CORE = "core"
    CORE_PLUS = "core+"
    H_INDEX = "hindex"
    RANDOM = "random"

    def __str__(self) -> str:  # CSV/CLI friendly
        return self.value


METHOD_ORDER: tuple[MethodId, ...] = tuple(MethodId)
DETERMINISTIC_METHODS: tuple[MethodId, ...] = tuple(
    m for m in MethodId if m is not MethodId.RANDOM
)


@dataclass(frozen=True)
class ScoreVector:
    """One finite score per vertex of the graph it was computed on."""

    scores: np.ndarray

    def __post_init__(self):
        if self.scores.dtype.kind == "f" and not np.isfinite(self.scores).all():
            raise ValueError("scores must be finite")
        self.scores.setflags(write=False)

    def __len__(self) -> int:
        return int(self.scores.shape[0])


@dataclass(frozen=True)
class RankedList:
    """Top-k vertices in non-increasing score order, ties by ascending id."""

    vertices: tuple[int, ...]
    method: MethodId | None = None

    @property
    def k(self) -> int:
        return len(self.vertices)

    def prefix(self, k: int) -> tuple[int, ...]:
        return self.vertices[:k]


@dataclass(frozen=True)
class VoteState:
    """Per-vertex incoming votes and remaining voting power after a run."""

    scores: np.ndarray  # S_i
    voting_power: np.ndarray  # T_i, clamped to [0, 1]
    suppression: float  # f


def top_k(scores: ScoreVector | np.ndarray, k: int) -> RankedList:
    """The k highest-scoring vertices; equal scores ordered by ascending id."""
    values = scores.scores if isinstance(scores, ScoreVector) else np.asarray(scores)
    n = values.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    order = np.argsort(-values, kind="stable")  # stable keeps id order on ties
    return RankedList(vertices=tuple(int(v) for v in order[:k]))


def _neighbor_sum(g: Graph, values: np.ndarray) -> np.ndarray:
    """out[v] = sum of values over the neighbors of v."""
    gathered = values[g.indices]
    if gathered.size == 0:
        return np.zeros(g.vertex_count, dtype=values.dtype)
    offsets = np.minimum(g.indptr[:-1], gathered.size - 1)
    out = np.add.reduceat(gathered, offsets)
    out[np.diff(g.indptr) == 0] = 0
    return out


def degree_scores(g: Graph) -> ScoreVector:
    """deg(v): the plain hub ordering."""
    return ScoreVector(scores=g.degrees())


def extended_degree_scores(g: Graph) -> ScoreVector:
    """deg+(v) = sum of neighbor degrees (second-level topology)."""
    return ScoreVector(scores=_neighbor_sum(g, g.degrees()))


def pagerank_scores(
    g: Graph,
    damping: float = 0.85,
    tolerance: float = 1e-10,
    max_iters: int = 200,
) -> ScoreVector:
    """Unnormalized PageRank: fixed point of
    ``PR(v) = (1 - damping) + damping * sum_{u ~ v} PR(u)/deg(u)``
    under synchronous full sweeps from an all-ones start.

    Convergence is declared when the largest per-vertex change drops below
    ``tolerance``; exceeding ``max_iters`` raises ConvergenceError.
    """
    if not 0 <= damping < 1:
        raise ValueError(f"damping must lie in [0, 1), got {damping}")
    deg = g.degrees().astype(np.float64)
    if deg.min() == 0:
        raise ValueError("pagerank requires every vertex to have a neighbor")
    pr = np.ones(g.vertex_count, dtype=np.float64)
    base = 1.0 - damping
    residual = np.inf
    for _ in range(max_iters):
        new = base + damping * _neighbor_sum(g, pr / deg)
        residual = float(np.max(np.abs(new - pr)))
        pr = new
        if residual < tolerance:
            return ScoreVector(scores=pr)
    raise ConvergenceError(
        f"pagerank residual {residual:.3e} after {max_iters} iterations "
        f"(tolerance {tolerance:.1e})",
        residual=residual,
        iterations=max_iters,
    )


def voterank(g: Graph, k: int, suppression: float | None = None) -> RankedList:
    """Iterative voting selection of k spreaders.

    Every vertex starts with voting power T = 1.  Each round recomputes the
    incoming votes S_v = sum of neighbor T values, elects the highest-voted
    vertex not yet chosen (ties to the smallest id), zeroes the winner's S and
    T, and lowers each winner-neighbor's T by the suppression factor
    (default 1/average-degree, fixed for the whole run), clamped at zero.
    """
    return _voterank_full(g, k, suppression)[0]


def voterank_with_state(
    g: Graph, k: int, suppression: float | None = None
) -> tuple[RankedList, VoteState]:
    """voterank plus the final (S, T) state, mainly for inspection."""
    return _voterank_full(g, k, suppression)


def _voterank_full(
    g: Graph, k: int, suppression: float | None
) -> tuple[RankedList, VoteState]:
    n = g.vertex_count
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    f = (n / (2.0 * g.edge_count)) if suppression is None else float(suppression)
    power = np.ones(n, dtype=np.float64)
    elected = np.zeros(n, dtype=bool)
    votes = np.zeros(n, dtype=np.float64)
    picks: list[int] = []
    for _ in range(k):
        votes = _neighbor_sum(g, power)
        votes[elected] = 0.0  # retired vertices hold no score
        winner = int(np.argmax(np.where(elected, -1.0, votes)))
        picks.append(winner)
        elected[winner] = True
        votes[winner] = 0.0
        power[winner] = 0.0
        nbrs = g.neighbors(winner)
        power[nbrs] = np.maximum(power[nbrs] - f, 0.0)
    ranked = RankedList(vertices=tuple(picks), method=MethodId.VOTERANK)
    return ranked, VoteState(scores=votes, voting_power=power, suppression=f)


def core_numbers(g: Graph) -> ScoreVector:
    """Core number of each vertex: the deepest peeling level it survives to."""
    return ScoreVector(scores=_kernels.core_numbers(g.indptr, g.indices))


def coreness_scores(g: Graph) -> ScoreVector:
    """C(v) = sum of neighbor core numbers."""
    return ScoreVector(scores=_neighbor_sum(g, core_numbers(g).scores))


def extended_coreness_scores(g: Graph) -> ScoreVector:
    """C+(v) = sum of neighbor C values."""
    return ScoreVector(scores=_neighbor_sum(g, coreness_scores(g).scores))


def h_index_scores(g: Graph) -> ScoreVector:
    """H(v): the largest h such that at least h neighbors have degree >= h."""
    return ScoreVector(scores=_kernels.h_index(g.indptr, g.indices))


def random_candidate(g: Graph, k: int, seed: int) -> CandidateSet:
    """k distinct vertices drawn uniformly by the seeded generator."""
    n = g.vertex_count
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    return CandidateSet(vertices=tuple(SplitMix64(seed).sample(n, k)))


_SCORERS = {
    MethodId.DEGREE: degree_scores,
    MethodId.DEGREE_PLUS: extended_degree_scores,
    MethodId.PAGERANK: pagerank_scores,
    MethodId.CORE: coreness_scores,
    MethodId.CORE_PLUS: extended_coreness_scores,
    MethodId.H_INDEX: h_index_scores,
}


def scores_for(g: Graph, method: MethodId) -> ScoreVector:
    """Score vector for a score-based method (not vrank/random)."""
    try:
        return _SCORERS[MethodId(method)](g)
    except KeyError:
        raise ValueError(f"{method} is not a score-based method") from None


def rank_by_method(
    g: Graph,
    method: MethodId,
    k: int,
    seed: int = 0,
    suppression: float | None = None,
) -> RankedList:
    """Length-k selection for any method.

    ``random`` yields one seeded draw (the expected-value baseline in the
    harness instead averages many draws).
    """
    method = MethodId(method)
    if method is MethodId.VOTERANK:
        return voterank(g, k, suppression=suppression)
    if method is MethodId.RANDOM:
        picks = random_candidate(g, k, seed).vertices
        return RankedList(vertices=picks, method=MethodId.RANDOM)
    ranked = top_k(scores_for(g, method), k)
    return RankedList(vertices=ranked.vertices, method=method)
