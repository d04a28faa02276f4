"""Brute-force marginal codelength oracle.

For a candidate next token ``a``, the virtual first code block of the
extended buffer costs, without dropping any constants:

- ``log2 V + 1`` bits when ``a`` is absent from the window (literal);
- ``log2 delta + 1`` bits when ``a`` occurs in the window at distance
  ``delta`` but does not extend the canonical match (singleton match,
  ``log2 1 + log2 delta + 1``);
- ``(log2 lam + log2 delta + 1) - (log2 l + log2 d + 1)`` bits when
  ``a`` extends the length-``l`` match to ``lam = l + 1`` at distance
  ``delta``, replacing the old match block.

Every candidate gets a fresh longest-match search over the extended
suffix, so this path shares nothing with the production penalty vector
beyond the match definition itself.  It exists to cross-check that
path; keep it dumb.
"""

import numpy as np

from .backends import ACTIVE_BACKEND
from .match import Context, simulate_views


def _oracle_costs_py(window, buffer, vocab, canonical_only):
    wn = window.shape[0]
    bn = buffer.shape[0]
    costs = np.empty(vocab, np.float64)
    literal = np.log2(vocab) + 1.0

    # canonical match of the unextended buffer
    l = 0
    d = 0
    for j in range(wn - 1, -1, -1):
        m = 0
        while m < bn and m <= j and window[j - m] == buffer[bn - 1 - m]:
            m += 1
        if m > l:
            l = m
            d = wn - j
            if l == bn:
                break

    old_block = 0.0
    if l >= 1:
        old_block = np.log2(l) + np.log2(d) + 1.0
    canonical_follower = np.int64(-1)
    if canonical_only and l >= 1 and d > 1:
        canonical_follower = window[wn - d + 1]

    for a in range(vocab):
        # fresh longest match over the suffix extended by a
        lam = 0
        delta = 0
        for j in range(wn - 1, -1, -1):
            if window[j] != a:
                continue
            m = 0
            while m < bn and m + 1 <= j and window[j - 1 - m] == buffer[bn - 1 - m]:
                m += 1
            if m + 1 > lam:
                lam = m + 1
                delta = wn - j
                if lam == bn + 1:
                    break
        if canonical_only:
            extends = l >= 1 and a == canonical_follower
            if extends:
                lam = l + 1
                delta = d - 1
        else:
            extends = l >= 1 and lam == l + 1
        if extends:
            costs[a] = (np.log2(lam) + np.log2(delta) + 1.0) - old_block
        elif lam >= 1:
            # most recent singleton occurrence of a
            single = 0
            for j in range(wn - 1, -1, -1):
                if window[j] == a:
                    single = wn - j
                    break
            costs[a] = np.log2(single) + 1.0
        else:
            costs[a] = literal
    return costs


if ACTIVE_BACKEND == "numba":
    from numba import njit

    _oracle_costs = njit(cache=True)(_oracle_costs_py)
else:
    _oracle_costs = _oracle_costs_py


def codelength_vector(context: Context, extension_semantics: str = "any-occurrence") -> np.ndarray:
    """Un-simplified marginal codelengths for every candidate token, in bits."""
    window, buffer = simulate_views(context)
    canonical_only = _canonical_flag(extension_semantics)
    return _oracle_costs(
        np.ascontiguousarray(window, dtype=np.int64),
        np.ascontiguousarray(buffer, dtype=np.int64),
        context.vocab_size,
        canonical_only,
    )


def case_codelength_oracle(context: Context, token: int,
                           extension_semantics: str = "any-occurrence") -> float:
    """Marginal codelength of the virtual first code block for one token."""
    if not 0 <= token < context.vocab_size:
        raise ValueError("token id out of range for vocab_size")
    return float(codelength_vector(context, extension_semantics)[token])


def _canonical_flag(extension_semantics: str) -> bool:
    if extension_semantics == "any-occurrence":
        return False
    if extension_semantics == "canonical-only":
        return True
    raise ValueError(f"unknown extension semantics {extension_semantics!r}")
