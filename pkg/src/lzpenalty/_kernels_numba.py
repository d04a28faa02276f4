"""Numba-compiled inner loops for sliding-window matching.

Conventions shared by all kernels (and by the numpy twins in
``_kernels_numpy``):

- sequences are int64 arrays in time order, oldest first;
- distances are 1-indexed from the newest window token (d=1 means the
  occurrence ends at the window's last position);
- ties between equal-length occurrences resolve to the smallest
  distance, i.e. the most recent occurrence.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def longest_match_naive(window, buffer):
    """Longest buffer suffix occurring inside the window.

    Returns (l, d); (0, 0) when there is no match.  Full O(|w|*|b|)
    scan over every window end position.
    """
    wn = window.shape[0]
    bn = buffer.shape[0]
    best_l = 0
    best_d = 0
    if wn == 0 or bn == 0:
        return best_l, best_d
    for j in range(wn - 1, -1, -1):  # j descending = distance ascending
        m = 0
        while m < bn and m <= j and window[j - m] == buffer[bn - 1 - m]:
            m += 1
        if m > best_l:
            best_l = m
            best_d = wn - j
            if best_l == bn:
                break
    return best_l, best_d


@njit(cache=True)
def longest_match_indexed(window, buffer):
    """Same contract as longest_match_naive, via an occurrence list.

    Only window positions holding the newest buffer token can end an
    occurrence, so the scan visits just those.
    """
    wn = window.shape[0]
    bn = buffer.shape[0]
    best_l = 0
    best_d = 0
    if wn == 0 or bn == 0:
        return best_l, best_d
    last = buffer[bn - 1]
    ends = np.nonzero(window == last)[0]
    for i in range(ends.shape[0] - 1, -1, -1):
        j = ends[i]
        m = 1
        while m < bn and m <= j and window[j - m] == buffer[bn - 1 - m]:
            m += 1
        if m > best_l:
            best_l = m
            best_d = wn - j
            if best_l == bn:
                break
    return best_l, best_d


@njit(cache=True)
def extension_deltas(window, buffer, match_len, vocab):
    """Follower distances for every window occurrence of the matched suffix.

    Returns an int64[vocab] array where entry a is the smallest distance
    of a window position holding token a immediately after an occurrence
    of the length-``match_len`` buffer suffix, or 0 when no occurrence is
    followed by a.  An occurrence ending at the newest window token has
    its follower outside the window and contributes nothing.
    """
    out = np.zeros(vocab, np.int64)
    wn = window.shape[0]
    bn = buffer.shape[0]
    if match_len <= 0 or wn < 2 or bn < match_len:
        return out
    # j = end of occurrence; follower sits at j + 1
    for j in range(wn - 2, match_len - 2, -1):  # delta ascending, first write wins
        ok = True
        for m in range(match_len):
            if window[j - m] != buffer[bn - 1 - m]:
                ok = False
                break
        if ok:
            a = window[j + 1]
            if out[a] == 0:
                out[a] = wn - (j + 1)
    return out


@njit(cache=True)
def occurrence_dists(window, vocab):
    """Distance of the most recent window occurrence of each token.

    Returns int64[vocab]; 0 marks tokens absent from the window.
    """
    out = np.zeros(vocab, np.int64)
    wn = window.shape[0]
    for j in range(wn - 1, -1, -1):
        a = window[j]
        if out[a] == 0:
            out[a] = wn - j
    return out


@njit(cache=True)
def lzss_parse(data, window_capacity, buffer_capacity):
    """Greedy left-to-right parse into literal / match blocks.

    At each position, the longest prefix of the next ``buffer_capacity``
    tokens found in the preceding ``window_capacity`` tokens wins; any
    match of length >= 1 beats a literal.  Match sources never overlap
    the unencoded region.

    Returns (kinds, values, dists, count) where kinds[i] is 1 for a
    match, 0 for a literal; values[i] holds the match length or the
    literal token; dists[i] holds the match distance (0 for literals).
    """
    n = data.shape[0]
    kinds = np.zeros(n, np.uint8)
    values = np.zeros(n, np.int64)
    dists = np.zeros(n, np.int64)
    count = 0
    pos = 0
    while pos < n:
        wstart = pos - window_capacity
        if wstart < 0:
            wstart = 0
        maxlen = n - pos
        if maxlen > buffer_capacity:
            maxlen = buffer_capacity
        best_l = 0
        best_d = 0
        for j in range(pos - 1, wstart - 1, -1):  # j descending = D ascending
            if data[j] != data[pos]:
                continue
            limit = pos - j  # source must stay inside already-encoded text
            if limit > maxlen:
                limit = maxlen
            m = 1
            while m < limit and data[j + m] == data[pos + m]:
                m += 1
            if m > best_l:
                best_l = m
                best_d = pos - j
                if best_l == maxlen:
                    break
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
