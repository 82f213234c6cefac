"""Numba kernels for the traversal- and enumeration-heavy inner loops.

All kernels operate on the compressed adjacency arrays (``indptr`` int64,
``indices`` int32) and are compiled once per process (disk-cached).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def bfs_from_set(indptr, indices, sources, dist, stamps, stamp, queue):
    """Multi-source BFS over unit-weight edges.

    ``dist[v]`` is valid only where ``stamps[v] == stamp``; the stamp scheme
    lets callers reuse the buffers without clearing them between runs.
    Returns the number of reached vertices.
    """
    head = 0
    tail = 0
    for i in range(sources.shape[0]):
        s = sources[i]
        if stamps[s] != stamp:
            stamps[s] = stamp
            dist[s] = 0
            queue[tail] = s
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if stamps[u] != stamp:
                stamps[u] = stamp
                dist[u] = dv
                queue[tail] = u
                tail += 1
    return tail


@njit(cache=True)
def component_labels(indptr, indices):
    """Label connected components; returns (labels, component_count)."""
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int32)
    comp = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = comp
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if labels[u] < 0:
                    labels[u] = comp
                    queue[tail] = u
                    tail += 1
        comp += 1
    return labels, comp


@njit(cache=True)
def core_numbers(indptr, indices):
    """Degeneracy peeling (bucket-sorted, O(V+E)); returns core numbers."""
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    max_deg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        deg[v] = d
        if d > max_deg:
            max_deg = d
    # bucket starts by degree
    bin_start = np.zeros(max_deg + 2, np.int64)
    for v in range(n):
        bin_start[deg[v] + 1] += 1
    for d in range(1, max_deg + 2):
        bin_start[d] += bin_start[d - 1]
    vert = np.empty(n, np.int64)
    pos = np.empty(n, np.int64)
    fill = bin_start.copy()
    for v in range(n):
        p = fill[deg[v]]
        vert[p] = v
        pos[v] = p
        fill[deg[v]] += 1
    # peel in nondecreasing degree order; deg[] degrades into core numbers
    for i in range(n):
        v = vert[i]
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    vert[pu] = w
                    vert[pw] = u
                    pos[u] = pw
                    pos[w] = pu
                bin_start[du] += 1
                deg[u] -= 1
    return deg


@njit(cache=True)
def h_index(indptr, indices):
    """Per-vertex H-index: max h such that >= h neighbors have degree >= h."""
    n = indptr.shape[0] - 1
    deg = np.empty(n, np.int64)
    max_deg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        deg[v] = d
        if d > max_deg:
            max_deg = d
    counts = np.zeros(max_deg + 1, np.int64)
    out = np.zeros(n, np.int64)
    for v in range(n):
        d = deg[v]
        # neighbor degrees capped at deg(v): counts above d cannot matter
        for p in range(indptr[v], indptr[v + 1]):
            b = deg[indices[p]]
            if b > d:
                b = d
            counts[b] += 1
        total = 0
        hv = 0
        for m in range(d, 0, -1):
            total += counts[m]
            if total >= m:
                hv = m
                break
        out[v] = hv
        for p in range(indptr[v], indptr[v + 1]):
            b = deg[indices[p]]
            if b > d:
                b = d
            counts[b] = 0
    return out


@njit(cache=True)
def all_pairs_distances(indptr, indices):
    """Hop-count matrix via one BFS per vertex (int16; -1 where unreachable)."""
    n = indptr.shape[0] - 1
    out = np.empty((n, n), np.int16)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    for s in range(n):
        for v in range(n):
            dist[v] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[v] + 1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if dist[u] < 0:
                    dist[u] = dv
                    queue[tail] = u
                    tail += 1
        for v in range(n):
            out[s, v] = dist[v]
    return out


@njit(cache=True)
def enumerate_subsets_scan(dist_matrix, k, cap):
    """Scan every k-subset with incremental prefix minima.

    For each subset S the farness F(S) = sum_v min_{s in S} dist_matrix[s, v]
    costs O(|V|) at the leaf.  Enumeration order is lexicographic, so the
    stored argmin sets come out lexicographically sorted.

    Returns (best_farness, best_count, stored, sets, sum_f, sum_f_sq).
    """
    n = dist_matrix.shape[0]
    best = np.int64(1) << 62
    n_best = np.int64(0)
    stored = 0
    sets = np.zeros((cap, k), np.int32)
    sum_f = np.int64(0)
    sum_f_sq = 0.0
    if k == 1:
        for v in range(n):
            f = np.int64(0)
            for t in range(n):
                f += dist_matrix[v, t]
            sum_f += f
            sum_f_sq += float(f) * float(f)
            if f < best:
                best = f
                n_best = 1
                sets[0, 0] = v
                stored = 1
            elif f == best:
                n_best += 1
                if stored < cap:
                    sets[stored, 0] = v
                    stored += 1
        return best, n_best, stored, sets, sum_f, sum_f_sq

    prefmin = np.empty((k - 1, n), np.int16)
    choice = np.empty(k - 1, np.int64)
    level = 0
    choice[0] = -1
    while level >= 0:
        choice[level] += 1
        v = choice[level]
        if v > n - k + level:
            level -= 1
            continue
        if level == 0:
            for t in range(n):
                prefmin[0, t] = dist_matrix[v, t]
        else:
            for t in range(n):
                a = prefmin[level - 1, t]
                b = dist_matrix[v, t]
                prefmin[level, t] = a if a < b else b
        if level == k - 2:
            for w in range(v + 1, n):
                f = np.int64(0)
                for t in range(n):
                    a = prefmin[level, t]
                    b = dist_matrix[w, t]
                    f += a if a < b else b
                sum_f += f
                sum_f_sq += float(f) * float(f)
                if f < best:
                    best = f
                    n_best = 1
                    for j in range(k - 1):
                        sets[0, j] = choice[j]
                    sets[0, k - 1] = w
                    stored = 1
                elif f == best:
                    n_best += 1
                    if stored < cap:
                        for j in range(k - 1):
                            sets[stored, j] = choice[j]
                        sets[stored, k - 1] = w
                        stored += 1
        else:
            level += 1
            choice[level] = choice[level - 1]
    return best, n_best, stored, sets, sum_f, sum_f_sq


@njit(cache=True)
def enumerate_subsets_histogram(dist_matrix, k, scale, nbins):
    """Histogram of farness values over every k-subset.

    Bin index is int(F / scale); with scale == 1.0 each integer farness value
    gets its own exact bin.
    """
    n = dist_matrix.shape[0]
    counts = np.zeros(nbins, np.int64)
    if k == 1:
        for v in range(n):
            f = np.int64(0)
            for t in range(n):
                f += dist_matrix[v, t]
            counts[int(f / scale)] += 1
        return counts

    prefmin = np.empty((k - 1, n), np.int16)
    choice = np.empty(k - 1, np.int64)
    level = 0
    choice[0] = -1
    while level >= 0:
        choice[level] += 1
        v = choice[level]
        if v > n - k + level:
            level -= 1
            continue
        if level == 0:
            for t in range(n):
                prefmin[0, t] = dist_matrix[v, t]
        else:
            for t in range(n):
                a = prefmin[level - 1, t]
                b = dist_matrix[v, t]
                prefmin[level, t] = a if a < b else b
        if level == k - 2:
            for w in range(v + 1, n):
                f = np.int64(0)
                for t in range(n):
                    a = prefmin[level, t]
                    b = dist_matrix[w, t]
                    f += a if a < b else b
                counts[int(f / scale)] += 1
        else:
            level += 1
            choice[level] = choice[level - 1]
    return counts
