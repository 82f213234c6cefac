"""Distance-based evaluation of vertex sets.

Everything here reduces to one multi-source BFS: hop distances d(v, S) to the
nearest member of a set S, their sum (farness), the per-set average distance,
and the neighborhood-shell profile.  ``Evaluator`` keeps reusable BFS buffers
for tight loops; the module-level functions are one-shot conveniences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DisconnectedGraphError
from .graph import Graph


@dataclass(frozen=True)
class CandidateSet:
    """Ordered set of distinct vertex ids; k is its length."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise ValueError("candidate set is empty")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("candidate set holds duplicate vertices")

    @property
    def k(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DistanceField:
    """Per-vertex hop counts to the nearest source; zero exactly on sources."""

    dist: np.ndarray  # int32

    def __post_init__(self):
        self.dist.setflags(write=False)


@dataclass(frozen=True)
class ShellProfile:
    """sizes[p] = number of vertices at distance exactly p from the set."""

    sizes: tuple[int, ...]


@dataclass(frozen=True)
class EvaluationResult:
    k: int
    farness: int
    avg_distance: float


VertexSet = CandidateSet | Sequence[int]


def _source_array(g: Graph, s: VertexSet) -> np.ndarray:
    vertices = s.vertices if isinstance(s, CandidateSet) else tuple(int(v) for v in s)
    if len(vertices) == 0:
        raise ValueError("candidate set is empty")
    if len(set(vertices)) != len(vertices):
        raise ValueError("candidate set holds duplicate vertices")
    arr = np.asarray(vertices, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= g.vertex_count:
        raise ValueError(
            f"vertex ids must lie in [0, {g.vertex_count}), got {vertices!r}"
        )
    return arr.astype(np.int32)


class Evaluator:
    """Reusable BFS workspace bound to one graph.

    Buffers are stamped instead of cleared, so repeated evaluations do no
    per-call clearing or reallocation.  Instances are not thread-safe; give
    each worker its own.
    """

    def __init__(self, g: Graph):
        self.graph = g
        n = g.vertex_count
        self._dist = np.empty(n, dtype=np.int32)
        self._stamps = np.zeros(n, dtype=np.int64)
        self._queue = np.empty(n, dtype=np.int32)
        self._stamp = 0

    def distances_buffer(self, s: VertexSet) -> np.ndarray:
        """Distance array in the shared buffer; valid until the next call."""
        sources = _source_array(self.graph, s)
        self._stamp += 1
        reached = _kernels.bfs_from_set(
            self.graph.indptr,
            self.graph.indices,
            sources,
            self._dist,
            self._stamps,
            self._stamp,
            self._queue,
        )
        if reached != self.graph.vertex_count:
            raise DisconnectedGraphError(
                f"set reaches {reached} of {self.graph.vertex_count} vertices"
            )
        return self._dist

    def distances(self, s: VertexSet) -> np.ndarray:
        return self.distances_buffer(s).copy()

    def farness(self, s: VertexSet) -> int:
        return int(self.distances_buffer(s).sum(dtype=np.int64))

    def shell_sizes(self, s: VertexSet) -> np.ndarray:
        return np.bincount(self.distances_buffer(s))

    def evaluate(self, s: VertexSet) -> EvaluationResult:
        dist = self.distances_buffer(s)
        k = len(s.vertices if isinstance(s, CandidateSet) else s)
        n = self.graph.vertex_count
        if k >= n:
            raise ValueError("average distance is undefined for k = |V|")
        total = int(dist.sum(dtype=np.int64))
        return EvaluationResult(k=k, farness=total, avg_distance=total / (n - k))


def multi_source_bfs(g: Graph, s: VertexSet) -> DistanceField:
    """d(v, S): hop count from each vertex to its nearest member of S."""
    return DistanceField(dist=Evaluator(g).distances(s))


def farness(g: Graph, s: VertexSet) -> int:
    """Sum over external vertices of their distance to the set."""
    return Evaluator(g).farness(s)


def avg_distance(g: Graph, s: VertexSet) -> float:
    """Farness normalized by the |V| - k external vertices."""
    return Evaluator(g).evaluate(s).avg_distance


def evaluate(g: Graph, s: VertexSet) -> EvaluationResult:
    """Farness and average distance from one BFS."""
    return Evaluator(g).evaluate(s)


def shell_profile(g: Graph, s: VertexSet) -> ShellProfile:
    """Shell sizes out to the eccentricity of the set; entries sum to |V|."""
    sizes = Evaluator(g).shell_sizes(s)
    return ShellProfile(sizes=tuple(int(c) for c in sizes))


def farness_from_shells(profile: ShellProfile | Sequence[int]) -> int:
    """Farness recomputed as sum_p p * |shell p|; equals the BFS farness."""
    sizes = profile.sizes if isinstance(profile, ShellProfile) else profile
    return int(sum(p * size for p, size in enumerate(sizes)))
