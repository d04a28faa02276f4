"""Slow, literal reference implementations used to cross-check the package.

Everything here is deliberately naive pure Python: exhaustive double
loops, list slicing, no numpy tricks, no shared code with the package
internals.  Tests freeze expected values computed by these.
"""

import math


def brute_force_suffix_match(window, buffer):
    """Exhaustive scan over every suffix length and window position.

    Returns (l, d) with the most recent occurrence on length ties;
    (0, 0) when nothing matches.
    """
    window = [int(t) for t in window]
    buffer = [int(t) for t in buffer]
    wn = len(window)
    best = (0, 0)
    for k in range(1, len(buffer) + 1):
        suffix = buffer[-k:]
        for start in range(wn - k, -1, -1):  # most recent start first
            if window[start:start + k] == suffix:
                d = wn - (start + k - 1)
                best = (k, d)
                break
    return best


def brute_force_extension(window, buffer):
    """Follower map of the maximal suffix: token -> min follower distance."""
    window = [int(t) for t in window]
    buffer = [int(t) for t in buffer]
    wn = len(window)
    l, _ = brute_force_suffix_match(window, buffer)
    entries = {}
    if l >= 1:
        suffix = buffer[-l:]
        for start in range(wn - l):  # follower at start + l must exist
            if window[start:start + l] == suffix:
                follower = window[start + l]
                delta = wn - (start + l)
                if follower not in entries or delta < entries[follower]:
                    entries[follower] = delta
    return entries


def brute_force_occurrences(window):
    """token -> distance of its most recent window occurrence."""
    window = [int(t) for t in window]
    wn = len(window)
    out = {}
    for idx, tok in enumerate(window):
        out[tok] = wn - idx  # later assignments are more recent
    return out


def reference_penalty(window, buffer, vocab):
    """Three-branch penalty values computed from the brute-force maps."""
    l, d = brute_force_suffix_match(window, buffer)
    ext = brute_force_extension(window, buffer)
    occ = brute_force_occurrences(window)
    values = []
    for a in range(vocab):
        if l >= 1 and a in ext:
            values.append(math.log2((l + 1) * ext[a]) - math.log2(l * d) - 1.0)
        elif a in occ:
            values.append(math.log2(occ[a]))
        else:
            values.append(math.log2(vocab))
    return values


def reference_codelengths(window, buffer, vocab):
    """Un-dropped virtual-first-block costs per candidate token."""
    l, d = brute_force_suffix_match(window, buffer)
    ext = brute_force_extension(window, buffer)
    occ = brute_force_occurrences(window)
    costs = []
    for a in range(vocab):
        if l >= 1 and a in ext:
            lam, delta = l + 1, ext[a]
            costs.append(
                (math.log2(lam) + math.log2(delta) + 1.0)
                - (math.log2(l) + math.log2(d) + 1.0)
            )
        elif a in occ:
            costs.append(math.log2(occ[a]) + 1.0)
        else:
            costs.append(math.log2(vocab) + 1.0)
    return costs


def quadratic_detector(tokens, threshold):
    """Earliest-start, then shortest-period consecutive repetition search.

    Returns (start, period, repeats) or None.  Direct block comparisons,
    quadratic in the worst case.
    """
    x = [int(t) for t in tokens]
    n = len(x)
    for start in range(n):
        for period in range(1, (n - start) // threshold + 1):
            block = x[start:start + period]
            repeats = 1
            while (start + (repeats + 1) * period <= n
                   and x[start + repeats * period:start + (repeats + 1) * period] == block):
                repeats += 1
            if repeats >= threshold:
                return start, period, repeats
    return None
