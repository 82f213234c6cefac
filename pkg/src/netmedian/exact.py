"""Exhaustive k-median machinery for small graphs.

Ground truth for everything else: the true optimum over all k-subsets, the
exact expected value of a uniform random subset, a CLT-sampled estimate of
that expectation, and the full distribution of per-subset average distances.

Enumeration walks subsets in lexicographic order keeping a running per-vertex
prefix minimum of distances, so each subset costs O(|V|); an all-pairs
distance matrix (one BFS per vertex, 16-bit entries) backs the scan and caps
the graph size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, DisconnectedGraphError
from .evaluation import Evaluator
from .graph import Graph
from .rng import SplitMix64

DEFAULT_SUBSET_BUDGET = 2_000_000_000
DEFAULT_MATRIX_VERTEX_LIMIT = 5_000
DEFAULT_OPTIMAL_SET_CAP = 1_000
_EXACT_BIN_LIMIT = 1_000_000


@dataclass(frozen=True)
class ExactResult:
    """Optimum over all k-subsets plus the sets attaining it.

    ``optimal_sets`` is lexicographically sorted and capped (the true number
    of minimizers is ``optimal_set_count``).
    """

    k: int
    optimal_value: float
    optimal_farness: int
    optimal_sets: tuple[tuple[int, ...], ...]
    optimal_set_count: int
    subsets_examined: int


@dataclass(frozen=True)
class ExpectedValue:
    """Mean average-distance of a uniform random k-subset.

    ``exact`` is present only when computed exhaustively; in that case
    ``sampled`` repeats it, ``sample_count`` is the number of subsets, and
    ``sample_stddev`` is the population spread of the full distribution.
    """

    k: int
    exact: float | None
    sampled: float
    sample_count: int
    sample_stddev: float
    stderr: float  # sample_stddev / sqrt(sample_count)


@dataclass(frozen=True)
class DistributionHistogram:
    """Counts of per-subset average distances over every k-subset.

    Bins are exact A(S) values when feasible, else uniform-width bins keyed
    by their lower edge (``bin_width`` is None exactly in the exact case).
    """

    k: int
    bins: dict[float, int]
    bin_width: float | None

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    def as_plot_text(self) -> str:
        """Two-column "value count" plot data, one bin per line."""
        return "".join(f"{value:.10g} {count}\n" for value, count in self.bins.items())


def distance_matrix(
    g: Graph, vertex_limit: int = DEFAULT_MATRIX_VERTEX_LIMIT
) -> np.ndarray:
    """All-pairs hop counts as int16; refuses graphs over the vertex limit."""
    n = g.vertex_count
    if n > vertex_limit:
        raise BudgetExceededError(
            f"all-pairs matrix needs {n} vertices but the limit is {vertex_limit}",
            budget=vertex_limit,
            required=n,
        )
    matrix = _kernels.all_pairs_distances(g.indptr, g.indices)
    if matrix.min() < 0:
        raise DisconnectedGraphError("graph is not connected")
    return matrix


def _checked_subset_count(n: int, k: int, budget: int) -> int:
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < |V|={n}, got k={k}")
    required = math.comb(n, k)
    if required > budget:
        raise BudgetExceededError(
            f"enumerating C({n},{k}) = {required} subsets exceeds the budget "
            f"of {budget}; pass a larger budget to override",
            budget=budget,
            required=required,
        )
    return required


def brute_force_kmedian(
    g: Graph,
    k: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
    max_sets: int = DEFAULT_OPTIMAL_SET_CAP,
    vertex_limit: int = DEFAULT_MATRIX_VERTEX_LIMIT,
) -> ExactResult:
    """True k-median optimum by exhaustive enumeration."""
    n = g.vertex_count
    required = _checked_subset_count(n, k, budget)
    matrix = distance_matrix(g, vertex_limit=vertex_limit)
    best, n_best, stored, sets, _, _ = _kernels.enumerate_subsets_scan(
        matrix, k, max_sets
    )
    optimal_sets = tuple(
        tuple(int(v) for v in sets[i, :]) for i in range(stored)
    )
    return ExactResult(
        k=k,
        optimal_value=int(best) / (n - k),
        optimal_farness=int(best),
        optimal_sets=optimal_sets,
        optimal_set_count=int(n_best),
        subsets_examined=required,
    )


def exact_expected_value(
    g: Graph,
    k: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
    vertex_limit: int = DEFAULT_MATRIX_VERTEX_LIMIT,
) -> ExpectedValue:
    """Mean of A(S) over all k-subsets, by the same exhaustive scan."""
    n = g.vertex_count
    required = _checked_subset_count(n, k, budget)
    matrix = distance_matrix(g, vertex_limit=vertex_limit)
    _, _, _, _, sum_f, sum_f_sq = _kernels.enumerate_subsets_scan(matrix, k, 1)
    scale = n - k
    mean_f = sum_f / required
    variance = max(sum_f_sq / required - mean_f * mean_f, 0.0) / (scale * scale)
    stddev = math.sqrt(variance)
    return ExpectedValue(
        k=k,
        exact=mean_f / scale,
        sampled=mean_f / scale,
        sample_count=required,
        sample_stddev=stddev,
        stderr=stddev / math.sqrt(required),
    )


def sampled_expected_value(
    g: Graph, k: int, sample_count: int = 100, seed: int = 0
) -> ExpectedValue:
    """CLT estimate of the expected A(S) from seeded uniform k-subsets."""
    n = g.vertex_count
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < |V|={n}, got k={k}")
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = SplitMix64(seed)
    evaluator = Evaluator(g)
    values = np.empty(sample_count, dtype=np.float64)
    for i in range(sample_count):
        subset = rng.sample(n, k)
        values[i] = evaluator.farness(subset) / (n - k)
    mean = float(values.mean())
    stddev = float(values.std(ddof=1)) if sample_count > 1 else 0.0
    return ExpectedValue(
        k=k,
        exact=None,
        sampled=mean,
        sample_count=sample_count,
        sample_stddev=stddev,
        stderr=stddev / math.sqrt(sample_count),
    )


def distribution_histogram(
    g: Graph,
    k: int,
    bin_width: float | None = None,
    budget: int = DEFAULT_SUBSET_BUDGET,
    vertex_limit: int = DEFAULT_MATRIX_VERTEX_LIMIT,
) -> DistributionHistogram:
    """Distribution of A(S) over every k-subset.

    With ``bin_width`` unset, bins are exact A(S) values whenever the number
    of distinct farness values stays within a million; otherwise a uniform
    width is chosen (or taken from the caller).
    """
    n = g.vertex_count
    _checked_subset_count(n, k, budget)
    matrix = distance_matrix(g, vertex_limit=vertex_limit)
    externals = n - k
    max_farness = int(matrix.max()) * externals
    if bin_width is None and max_farness + 1 <= _EXACT_BIN_LIMIT:
        counts = _kernels.enumerate_subsets_histogram(matrix, k, 1.0, max_farness + 1)
        bins = {
            f / externals: int(c) for f, c in enumerate(counts) if c > 0
        }
        return DistributionHistogram(k=k, bins=bins, bin_width=None)
    if bin_width is None:
        bin_width = (max_farness / externals) / 100_000
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    scale = bin_width * externals
    nbins = int(max_farness / scale) + 1
    counts = _kernels.enumerate_subsets_histogram(matrix, k, scale, nbins)
    bins = {
        i * bin_width: int(c) for i, c in enumerate(counts) if c > 0
    }
    return DistributionHistogram(k=k, bins=bins, bin_width=bin_width)
