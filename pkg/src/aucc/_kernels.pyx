# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Every function here has a numpy twin in :mod:`aucc._kernels_py` with the
same signature and bitwise-identical results; :mod:`aucc._backend` picks
one at import time.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, sqrt

cnp.import_array()

ctypedef long long i64


def sweep_pairs(const cnp.int64_t[::1] pair_i,
                const cnp.int64_t[::1] pair_j,
                const cnp.int64_t[::1] labels,
                const cnp.int64_t[::1] block_ends):
    """Fused flag construction and tie-block sweep.

    ``pair_i``/``pair_j`` list object pairs in ascending dissimilarity order;
    ``block_ends`` holds the exclusive end offset of each run of equal values.
    Returns ``(P, N, s_plus, s_minus, s_zero, twice_rank_sum)``.
    """
    cdef Py_ssize_t m = pair_i.shape[0]
    cdef Py_ssize_t nblocks = block_ends.shape[0]
    cdef Py_ssize_t b, q, start = 0, end
    cdef i64 pos, neg, negs_before = 0, total_pos = 0
    cdef i64 s_minus = 0, s_zero = 0, twice_rank = 0
    with nogil:
        for b in range(nblocks):
            end = block_ends[b]
            pos = 0
            for q in range(start, end):
                if labels[pair_i[q]] == labels[pair_j[q]]:
                    pos += 1
            neg = (end - start) - pos
            s_minus += pos * negs_before
            s_zero += pos * neg
            twice_rank += pos * (2 * m - start - end + 1)
            negs_before += neg
            total_pos += pos
            start = end
    return _finish(total_pos, negs_before, s_minus, s_zero, twice_rank)


def sweep_flags(const cnp.uint8_t[::1] flags, const cnp.int64_t[::1] block_ends):
    """Tie-block sweep over flags already arranged in ascending dissimilarity."""
    cdef Py_ssize_t m = flags.shape[0]
    cdef Py_ssize_t nblocks = block_ends.shape[0]
    cdef Py_ssize_t b, q, start = 0, end
    cdef i64 pos, neg, negs_before = 0, total_pos = 0
    cdef i64 s_minus = 0, s_zero = 0, twice_rank = 0
    with nogil:
        for b in range(nblocks):
            end = block_ends[b]
            pos = 0
            for q in range(start, end):
                pos += flags[q] != 0
            neg = (end - start) - pos
            s_minus += pos * negs_before
            s_zero += pos * neg
            twice_rank += pos * (2 * m - start - end + 1)
            negs_before += neg
            total_pos += pos
            start = end
    return _finish(total_pos, negs_before, s_minus, s_zero, twice_rank)


cdef tuple _finish(i64 P, i64 N, i64 s_minus, i64 s_zero, i64 twice_rank):
    cdef i64 s_plus = P * N - s_minus - s_zero
    return int(P), int(N), int(s_plus), int(s_minus), int(s_zero), int(twice_rank)


def lance_williams(double[:, ::1] dist, int method):
    """Agglomerate a square dissimilarity matrix in place.

    method: 0 single, 1 complete, 2 average, 3 ward (``dist`` must hold
    squared Euclidean distances; reported heights are square roots).
    Returns an ``(n - 1, 4)`` array of ``(left_node, right_node, height, size)``.
    """
    cdef Py_ssize_t n = dist.shape[0]
    cdef Py_ssize_t step, i, j, a = 0, b = 0, c
    cdef double best, v, dac, dbc, dab, na, nb, nc
    cdef cnp.ndarray[cnp.float64_t, ndim=2] merges = np.zeros((n - 1, 4), dtype=np.float64)
    cdef double[:, ::1] out = merges
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] active_arr = np.ones(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] active = active_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] size_arr = np.ones(n, dtype=np.float64)
    cdef double[::1] size = size_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] node_arr = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[::1] node = node_arr

    with nogil:
        for step in range(n - 1):
            best = INFINITY
            for i in range(n):
                if not active[i]:
                    continue
                for j in range(i + 1, n):
                    if active[j] and dist[i, j] < best:
                        best = dist[i, j]
                        a = i
                        b = j
            na = size[a]
            nb = size[b]
            dab = dist[a, b]
            for c in range(n):
                if not active[c] or c == a or c == b:
                    continue
                dac = dist[a, c]
                dbc = dist[b, c]
                if method == 0:
                    v = dac if dac <= dbc else dbc
                elif method == 1:
                    v = dac if dac >= dbc else dbc
                elif method == 2:
                    v = (na * dac + nb * dbc) / (na + nb)
                else:
                    nc = size[c]
                    v = ((na + nc) * dac + (nb + nc) * dbc - nc * dab) / (na + nb + nc)
                dist[a, c] = v
                dist[c, a] = v
            out[step, 0] = min(node[a], node[b])
            out[step, 1] = max(node[a], node[b])
            if method == 3:
                out[step, 2] = sqrt(dab) if dab > 0 else 0.0
            else:
                out[step, 2] = dab
            out[step, 3] = na + nb
            size[a] = na + nb
            node[a] = n + step
            active[b] = 0
    return merges
