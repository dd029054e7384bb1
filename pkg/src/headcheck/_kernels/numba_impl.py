"""Numba-jitted kernels; signatures mirror numpy_impl exactly.

All kernels use plain loops so nopython compilation succeeds on any
numba >= 0.57.  Compiled code is cached on disk, so the JIT cost is paid
once per environment.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def subseq_contains(pattern, seq):
    pos = 0
    n = seq.shape[0]
    for idx in range(pattern.shape[0]):
        item = pattern[idx]
        while pos < n and seq[pos] != item:
            pos += 1
        if pos == n:
            return False
        pos += 1
    return True


@njit(cache=True)
def advance_projection(db_flat, db_offsets, entry_ids, positions, item):
    out_entries = np.empty(entry_ids.shape[0], dtype=np.int64)
    out_positions = np.empty(entry_ids.shape[0], dtype=np.int64)
    count = 0
    for k in range(entry_ids.shape[0]):
        entry = entry_ids[k]
        pos = db_offsets[entry] + positions[k]
        end = db_offsets[entry + 1]
        while pos < end and db_flat[pos] != item:
            pos += 1
        if pos < end:
            out_entries[count] = entry
            out_positions[count] = pos + 1 - db_offsets[entry]
            count += 1
    return out_entries[:count].copy(), out_positions[:count].copy()


@njit(cache=True)
def pattern_match_matrix(seq_flat, seq_offsets, pat_flat, pat_offsets):
    n_seq = seq_offsets.shape[0] - 1
    n_pat = pat_offsets.shape[0] - 1
    out = np.zeros((n_seq, n_pat), dtype=np.uint8)
    for i in range(n_seq):
        seq = seq_flat[seq_offsets[i] : seq_offsets[i + 1]]
        for j in range(n_pat):
            pat = pat_flat[pat_offsets[j] : pat_offsets[j + 1]]
            if subseq_contains(pat, seq):
                out[i, j] = 1
    return out


@njit(cache=True)
def best_cosine(query_vecs, target_vecs):
    n_q = query_vecs.shape[0]
    n_t = target_vecs.shape[0]
    dim = query_vecs.shape[1]
    t_norms = np.empty(n_t, dtype=np.float64)
    for j in range(n_t):
        acc = 0.0
        for d in range(dim):
            acc += target_vecs[j, d] * target_vecs[j, d]
        t_norms[j] = np.sqrt(acc)
        if t_norms[j] == 0.0:
            t_norms[j] = 1.0
    out = np.empty(n_q, dtype=np.float64)
    for i in range(n_q):
        acc = 0.0
        for d in range(dim):
            acc += query_vecs[i, d] * query_vecs[i, d]
        q_norm = np.sqrt(acc)
        if q_norm == 0.0:
            q_norm = 1.0
        best = -np.inf
        for j in range(n_t):
            dot = 0.0
            for d in range(dim):
                dot += query_vecs[i, d] * target_vecs[j, d]
            sim = dot / (q_norm * t_norms[j])
            if sim > best:
                best = sim
        out[i] = best
    return out


def warmup() -> None:
    """Force compilation of every kernel on tiny inputs."""
    seq = np.array([1, 2, 3], dtype=np.int64)
    pat = np.array([1, 3], dtype=np.int64)
    subseq_contains(pat, seq)
    offsets = np.array([0, 3], dtype=np.int64)
    advance_projection(seq, offsets, np.array([0], dtype=np.int64), np.array([0], dtype=np.int64), 2)
    pattern_match_matrix(seq, offsets, pat, np.array([0, 2], dtype=np.int64))
    best_cosine(np.ones((1, 2)), np.ones((1, 2)))
