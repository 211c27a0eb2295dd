"""Numpy implementations of the compiled kernels in ``_kernels.pyx``.

Signatures and results match the extension exactly; these are used when the
extension is unavailable or ``AUCC_PURE_PYTHON=1`` is set.
"""
import numpy as np


def _block_sweep(flags, block_ends):
    m = flags.shape[0]
    ends = np.asarray(block_ends, dtype=np.int64)
    starts = np.concatenate(([0], ends[:-1])).astype(np.int64)
    pos = np.add.reduceat(flags.astype(np.int64), starts) if m else np.zeros(0, np.int64)
    neg = (ends - starts) - pos
    negs_before = np.cumsum(neg) - neg
    P = int(pos.sum())
    N = int(neg.sum())
    s_minus = int(np.dot(pos, negs_before))
    s_zero = int(np.dot(pos, neg))
    twice_rank = int(np.dot(pos, 2 * m - starts - ends + 1))
    return P, N, P * N - s_minus - s_zero, s_minus, s_zero, twice_rank


def sweep_pairs(pair_i, pair_j, labels, block_ends):
    flags = labels[pair_i] == labels[pair_j]
    return _block_sweep(flags, block_ends)


def sweep_flags(flags, block_ends):
    return _block_sweep(np.asarray(flags) != 0, block_ends)


def lance_williams(dist, method):
    n = dist.shape[0]
    D = dist.copy()
    # diagonal and lower triangle never win the argmin
    D[np.tril_indices(n)] = np.inf
    full = dist  # symmetric working copy for updates
    active = np.ones(n, dtype=bool)
    size = np.ones(n, dtype=np.float64)
    node = np.arange(n, dtype=np.int64)
    merges = np.zeros((n - 1, 4), dtype=np.float64)
    for step in range(n - 1):
        flat = int(np.argmin(D))
        a, b = divmod(flat, n)
        na, nb = size[a], size[b]
        dab = full[a, b]
        others = np.flatnonzero(active)
        others = others[(others != a) & (others != b)]
        dac = full[a, others]
        dbc = full[b, others]
        if method == 0:
            v = np.where(dac <= dbc, dac, dbc)
        elif method == 1:
            v = np.where(dac >= dbc, dac, dbc)
        elif method == 2:
            v = (na * dac + nb * dbc) / (na + nb)
        else:
            nc = size[others]
            v = ((na + nc) * dac + (nb + nc) * dbc - nc * dab) / (na + nb + nc)
        full[a, others] = v
        full[others, a] = v
        lo = others < a
        D[others[lo], a] = v[lo]
        D[a, others[~lo]] = v[~lo]
        D[b, :] = np.inf
        D[:, b] = np.inf
        merges[step, 0] = min(node[a], node[b])
        merges[step, 1] = max(node[a], node[b])
        if method == 3:
            merges[step, 2] = np.sqrt(dab) if dab > 0 else 0.0
        else:
            merges[step, 2] = dab
        merges[step, 3] = na + nb
        size[a] = na + nb
        node[a] = n + step
        active[b] = False
    return merges
