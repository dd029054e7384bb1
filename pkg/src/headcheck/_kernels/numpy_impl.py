"""Pure-numpy reference implementations of the hot kernels.

These are the fallback path; the numba module mirrors every signature.
Sequences and patterns are int arrays (label ids), databases are flattened
into one array plus an offsets vector (offsets[i]:offsets[i+1] spans
entry i).
"""

from __future__ import annotations

import numpy as np


def subseq_contains(pattern: np.ndarray, seq: np.ndarray) -> bool:
    """True iff ``pattern`` embeds into ``seq`` at strictly increasing indices."""
    pos = 0
    n = seq.shape[0]
    for item in pattern:
        while pos < n and seq[pos] != item:
            pos += 1
        if pos == n:
            return False
        pos += 1
    return True


def advance_projection(
    db_flat: np.ndarray,
    db_offsets: np.ndarray,
    entry_ids: np.ndarray,
    positions: np.ndarray,
    item: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Advance a projected database by one pattern item.

    ``positions[k]`` is the entry-relative index at which the scan for
    ``item`` starts within entry ``entry_ids[k]``.  Returns the surviving
    entries and the position just past each match.
    """
    out_entries = np.empty(entry_ids.shape[0], dtype=np.int64)
    out_positions = np.empty(entry_ids.shape[0], dtype=np.int64)
    count = 0
    for k in range(entry_ids.shape[0]):
        entry = entry_ids[k]
        start = db_offsets[entry] + positions[k]
        end = db_offsets[entry + 1]
        hits = np.nonzero(db_flat[start:end] == item)[0]
        if hits.shape[0]:
            out_entries[count] = entry
            out_positions[count] = positions[k] + hits[0] + 1
            count += 1
    return out_entries[:count].copy(), out_positions[:count].copy()


def pattern_match_matrix(
    seq_flat: np.ndarray,
    seq_offsets: np.ndarray,
    pat_flat: np.ndarray,
    pat_offsets: np.ndarray,
) -> np.ndarray:
    """Binary matrix M[i, j] = 1 iff pattern j embeds into sequence i."""
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


def best_cosine(query_vecs: np.ndarray, target_vecs: np.ndarray) -> np.ndarray:
    """Per query row, the maximum cosine similarity against any target row.

    Zero-norm rows are left unnormalized, so they score 0 against
    everything.
    """
    qn = _normalize_rows(query_vecs)
    tn = _normalize_rows(target_vecs)
    return (qn @ tn.T).max(axis=1)


def _normalize_rows(mat: np.ndarray) -> np.ndarray:
    norms = np.sqrt((mat * mat).sum(axis=1))
    norms[norms == 0.0] = 1.0
    return mat / norms[:, None]
