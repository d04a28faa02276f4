"""Pure-numpy fallbacks for the matching kernels.

Output-identical to ``_kernels_numba`` (same tie-breaks, same sentinel
values); vectorized over window positions instead of JIT loops.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def longest_match_naive(window, buffer):
    """Longest buffer suffix in the window; exhaustive per-length scan."""
    wn = window.shape[0]
    bn = buffer.shape[0]
    if wn == 0 or bn == 0:
        return 0, 0
    best_l = 0
    best_d = 0
    # Occurrences of a longer suffix end where occurrences of the shorter
    # one do, so lengths can grow until the first miss.
    for k in range(1, min(bn, wn) + 1):
        suffix = buffer[bn - k:]
        hits = np.flatnonzero((sliding_window_view(window, k) == suffix).all(axis=1))
        if hits.size == 0:
            break
        best_l = k
        end = int(hits[-1]) + k - 1  # most recent occurrence
        best_d = wn - end
    return best_l, best_d


def longest_match_indexed(window, buffer):
    """Same contract via candidate refinement from the last-token index."""
    wn = window.shape[0]
    bn = buffer.shape[0]
    if wn == 0 or bn == 0:
        return 0, 0
    ends = np.flatnonzero(window == buffer[bn - 1])
    if ends.size == 0:
        return 0, 0
    best_l = 1
    best_d = wn - int(ends[-1])
    for k in range(2, min(bn, wn) + 1):
        ends = ends[ends - (k - 1) >= 0]
        if ends.size == 0:
            break
        ends = ends[window[ends - (k - 1)] == buffer[bn - k]]
        if ends.size == 0:
            break
        best_l = k
        best_d = wn - int(ends[-1])
    return best_l, best_d


def extension_deltas(window, buffer, match_len, vocab):
    """Smallest follower distance per token; 0 where no occurrence extends."""
    out = np.zeros(vocab, np.int64)
    wn = window.shape[0]
    bn = buffer.shape[0]
    if match_len <= 0 or wn < 2 or bn < match_len:
        return out
    suffix = buffer[bn - match_len:]
    starts = np.flatnonzero(
        (sliding_window_view(window, match_len) == suffix).all(axis=1)
    )
    ends = starts + match_len - 1
    ends = ends[ends < wn - 1]  # follower must stay inside the window
    if ends.size == 0:
        return out
    followers = window[ends + 1]
    deltas = wn - (ends + 1)
    sentinel = np.iinfo(np.int64).max
    best = np.full(vocab, sentinel, np.int64)
    np.minimum.at(best, followers, deltas)
    seen = best != sentinel
    out[seen] = best[seen]
    return out


def occurrence_dists(window, vocab):
    """Distance of each token's most recent window occurrence (0 = absent)."""
    out = np.zeros(vocab, np.int64)
    wn = window.shape[0]
    if wn == 0:
        return out
    rev = window[::-1]
    tokens, first = np.unique(rev, return_index=True)
    out[tokens] = first + 1
    return out


def lzss_parse(data, window_capacity, buffer_capacity):
    """Greedy parse; candidate refinement per position, numpy comparisons."""
    n = data.shape[0]
    kinds = np.zeros(n, np.uint8)
    values = np.zeros(n, np.int64)
    dists = np.zeros(n, np.int64)
    count = 0
    pos = 0
    while pos < n:
        wstart = max(0, pos - window_capacity)
        maxlen = min(buffer_capacity, n - pos)
        starts = wstart + np.flatnonzero(data[wstart:pos] == data[pos])
        best_l = 0
        best_d = 0
        if starts.size > 0:
            best_l = 1
            best_d = pos - int(starts[-1])
            for k in range(1, maxlen):
                # a source may not run into the unencoded region
                starts = starts[starts + k < pos]
                if starts.size == 0:
                    break
                starts = starts[data[starts + k] == data[pos + k]]
                if starts.size == 0:
                    break
                best_l = k + 1
                best_d = pos - int(starts[-1])
        if best_l >= 1:
            kinds[count] = 1
            values[count] = best_l
            dists[count] = best_d
            pos += best_l
        else:
            kinds[count] = 0
            values[count] = data[pos]
            pos += 1
        count += 1
    return kinds, values, dists, count
