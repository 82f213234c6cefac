"""Simple-graph construction: edge-list parsing, normalization, LCC extraction.

The pipeline is ``parse_edge_list`` -> ``build_simple_graph`` ->
``largest_connected_component``; ``load_graph`` runs all three and composes
the vertex mappings.  Graphs are immutable once built: adjacency lives in one
contiguous index pool with per-vertex offsets, so traversal stays cache-dense
even on million-vertex inputs, and any number of threads may read a graph
concurrently.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from . import _kernels
from .errors import EdgeListParseError, EmptyGraphError

_COMMENT_PREFIXES = ("#", "%")


@dataclass(frozen=True)
class RawEdgeList:
    """Vertex pairs exactly as read: may hold duplicates, self-loops, id gaps."""

    edges: np.ndarray  # (m, 2) int64, in file order
    source_line_count: int

    def __len__(self) -> int:
        return int(self.edges.shape[0])


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph over contiguous vertex ids 0..n-1.

    Neighbors of ``v`` sit in ``indices[indptr[v]:indptr[v+1]]``, strictly
    increasing.  Every edge appears in both endpoint slices.
    """

    indptr: np.ndarray  # int64, length n+1
    indices: np.ndarray  # int32, length 2|E|

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def vertex_count(self) -> int:
        return int(self.indptr.shape[0] - 1)

    @property
    def edge_count(self) -> int:
        return int(self.indices.shape[0] // 2)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def __repr__(self) -> str:
        return f"Graph(|V|={self.vertex_count}, |E|={self.edge_count})"


@dataclass(frozen=True)
class VertexMapping:
    """Bijection between retained original ids and compact ids 0..n-1."""

    reverse: np.ndarray  # reverse[compact] = original id

    def __post_init__(self):
        self.reverse.setflags(write=False)

    def __len__(self) -> int:
        return int(self.reverse.shape[0])

    def to_original(self, compact: int) -> int:
        return int(self.reverse[compact])

    def to_compact(self, original: int) -> int:
        order = np.argsort(self.reverse, kind="stable")
        pos = np.searchsorted(self.reverse[order], original)
        if pos < len(order) and self.reverse[order[pos]] == original:
            return int(order[pos])
        raise KeyError(f"vertex {original} is not in the mapped graph")

    def forward_map(self) -> dict[int, int]:
        """Original-id -> compact-id dict (materialized on demand)."""
        return {int(orig): i for i, orig in enumerate(self.reverse)}

    @staticmethod
    def identity(n: int) -> "VertexMapping":
        return VertexMapping(reverse=np.arange(n, dtype=np.int64))


def compose_mappings(first: VertexMapping, second: VertexMapping) -> VertexMapping:
    """Mapping for a two-stage renumbering: second's ids resolve through first."""
    return VertexMapping(reverse=first.reverse[second.reverse])


@dataclass(frozen=True)
class DegreeStats:
    """Average degree 2|E|/|V|, maximum degree, and their ratio."""

    avg_degree: float
    max_degree: int
    degree_ratio: float  # max_degree / avg_degree


def parse_edge_list(source: str | IO[str] | Iterable[str]) -> RawEdgeList:
    """Read "u v" pairs, one per data line.

    Lines whose first non-blank character is ``#`` or ``%`` and blank lines
    are skipped; tokens are separated by runs of spaces/tabs; tokens past the
    first two (weights, timestamps) are ignored.  A non-integer or negative
    id in the first two fields raises EdgeListParseError with the line number.
    """
    lines: Iterable[str] = io.StringIO(source) if isinstance(source, str) else source
    us: list[int] = []
    vs: list[int] = []
    line_count = 0
    for line_number, line in enumerate(lines, start=1):
        line_count = line_number
        text = line.strip()
        if not text or text.startswith(_COMMENT_PREFIXES):
            continue
        parts = text.split()
        if len(parts) < 2:
            raise EdgeListParseError(
                line_number, f"expected two vertex ids, got {text!r}"
            )
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                line_number, f"non-integer vertex id in {text!r}"
            ) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_number, f"negative vertex id in {text!r}")
        us.append(u)
        vs.append(v)
    if us:
        edges = np.column_stack(
            (np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64))
        )
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    return RawEdgeList(edges=edges, source_line_count=line_count)


def build_simple_graph(raw: RawEdgeList) -> tuple[Graph, VertexMapping]:
    """Normalize raw pairs into a simple undirected graph (maybe disconnected).

    Every pair becomes bidirectional, duplicate and reversed duplicates are
    collapsed, self-loops are dropped, and vertex ids are compacted to
    0..n-1 in order of first appearance in the input.
    """
    if len(raw) == 0:
        raise EmptyGraphError("edge list holds no edges")
    flat = raw.edges.ravel()
    uniq_sorted, first_index = np.unique(flat, return_index=True)
    appearance_order = np.argsort(first_index, kind="stable")
    compact_of_sorted = np.empty(uniq_sorted.shape[0], dtype=np.int64)
    compact_of_sorted[appearance_order] = np.arange(uniq_sorted.shape[0])
    compact_flat = compact_of_sorted[np.searchsorted(uniq_sorted, flat)]
    mapping = VertexMapping(reverse=uniq_sorted[appearance_order])

    n = uniq_sorted.shape[0]
    a = compact_flat[0::2]
    b = compact_flat[1::2]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    proper = lo != hi  # drops self-loops
    keys = np.unique(lo[proper] * np.int64(n) + hi[proper])
    if keys.size == 0:
        raise EmptyGraphError("no edges survived normalization (self-loops only)")
    lo = keys // n
    hi = keys % n

    src = np.concatenate((lo, hi))
    dst = np.concatenate((hi, lo))
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int32)
    return Graph(indptr=indptr, indices=indices), mapping


def largest_connected_component(g: Graph) -> tuple[Graph, VertexMapping]:
    """Extract the component with the most vertices, renumbered contiguously.

    Ties between equal-size components go to the one containing the smallest
    vertex id.  An already-connected graph is returned as-is with an identity
    mapping.
    """
    n = g.vertex_count
    labels, n_components = _kernels.component_labels(g.indptr, g.indices)
    if n_components == 1:
        return g, VertexMapping.identity(n)
    counts = np.bincount(labels)
    winner = labels[int(np.argmax(counts[labels] == counts.max()))]
    keep = np.flatnonzero(labels == winner)

    new_id = np.full(n, -1, dtype=np.int64)
    new_id[keep] = np.arange(keep.shape[0])
    row_mask = np.repeat(labels == winner, np.diff(g.indptr))
    indices = new_id[g.indices[row_mask]].astype(np.int32)
    kept_counts = np.diff(g.indptr)[keep]
    indptr = np.zeros(keep.shape[0] + 1, dtype=np.int64)
    np.cumsum(kept_counts, out=indptr[1:])
    return Graph(indptr=indptr, indices=indices), VertexMapping(reverse=keep)


def is_connected(g: Graph) -> bool:
    """True when a BFS from vertex 0 reaches every vertex."""
    if g.vertex_count == 0:
        return False
    _, n_components = _kernels.component_labels(g.indptr, g.indices)
    return n_components == 1


def degree_stats(g: Graph) -> DegreeStats:
    avg = 2.0 * g.edge_count / g.vertex_count
    max_deg = int(g.degrees().max())
    return DegreeStats(avg_degree=avg, max_degree=max_deg, degree_ratio=max_deg / avg)


def load_graph(path: str | Path) -> tuple[Graph, VertexMapping]:
    """Parse a file, normalize, and keep the largest connected component.

    The returned mapping resolves compact ids back to the original file ids.
    """
    with open(path, "r", encoding="utf-8") as handle:
        raw = parse_edge_list(handle)
    candidate, build_map = build_simple_graph(raw)
    graph, lcc_map = largest_connected_component(candidate)
    return graph, compose_mappings(build_map, lcc_map)


def export_edge_list(g: Graph) -> str:
    """Normalized edge list: one "u v" per line, compact ids, sorted."""
    rows = np.repeat(np.arange(g.vertex_count, dtype=np.int64), np.diff(g.indptr))
    mask = g.indices > rows
    pairs = zip(rows[mask], g.indices[mask])
    return "".join(f"{u} {v}\n" for u, v in pairs)
