"""Sliding-window state over a causal token sequence.

The compressor state for a context is a pair of views: the *buffer*
(the most recent ``buffer_capacity`` tokens) and the *window* (up to
``window_capacity`` tokens immediately older than the buffer).  The
views never overlap; appending one token shifts both by one position.

Matching searches the window only.  A repetition whose prior occurrence
still sits inside the buffer is invisible until it ages into the window.
Distances count back from the newest window token: d=1 is an occurrence
ending at the window's last position.  Equal-length occurrences resolve
to the smallest distance.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .backends import get_kernels


class MatchResult(NamedTuple):
    """Canonical longest-suffix match: length l, recency distance d.

    (0, 0) is the sentinel for "no match".
    """

    l: int
    d: int


@dataclass(frozen=True)
class ExtensionMap:
    """Tokens that extend the matched suffix by one position.

    ``entries`` maps token id -> smallest follower distance delta among
    window occurrences of the matched suffix followed by that token.
    Empty whenever the canonical match has length zero.
    """

    entries: dict[int, int]
    match: MatchResult


@dataclass(frozen=True)
class Context:
    """A causal token sequence plus its derived window/buffer views."""

    tokens: np.ndarray
    vocab_size: int
    window_capacity: int = 512
    buffer_capacity: int = 32

    def __post_init__(self):
        tokens = np.asarray(self.tokens, dtype=np.int64)
        object.__setattr__(self, "tokens", tokens)
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be positive")
        if self.window_capacity < 1 or self.buffer_capacity < 1:
            raise ValueError("window and buffer capacities must be positive")
        if self.buffer_capacity >= self.window_capacity:
            raise ValueError("buffer_capacity must be smaller than window_capacity")
        if tokens.size and (tokens.min() < 0 or tokens.max() >= self.vocab_size):
            raise ValueError("token id out of range for vocab_size")

    def append(self, token: int) -> "Context":
        """New context with one more token; both views shift by one."""
        return Context(
            np.append(self.tokens, np.int64(token)),
            self.vocab_size,
            self.window_capacity,
            self.buffer_capacity,
        )


def simulate_views(context: Context) -> tuple[np.ndarray, np.ndarray]:
    """Split the context into (window, buffer) views.

    The buffer is the last min(buffer_capacity, n) tokens; the window is
    the up-to-window_capacity tokens immediately before it.  Short or
    empty contexts yield short or empty views, no padding.
    """
    tokens = context.tokens
    n = tokens.shape[0]
    b = min(context.buffer_capacity, n)
    buffer = tokens[n - b:]
    wstart = max(0, n - b - context.window_capacity)
    window = tokens[wstart:n - b]
    return window, buffer


def find_longest_suffix_match(window, buffer, matcher: str = "naive",
                              backend: str | None = None) -> MatchResult:
    """Longest buffer suffix occurring contiguously inside the window.

    Args:
        window, buffer: int token sequences, oldest first.
        matcher: "naive" for the exhaustive reference scan, "indexed"
            for the occurrence-list variant (bit-identical results).
    """
    kernels = get_kernels(backend)
    window = np.ascontiguousarray(window, dtype=np.int64)
    buffer = np.ascontiguousarray(buffer, dtype=np.int64)
    if matcher == "naive":
        l, d = kernels.longest_match_naive(window, buffer)
    elif matcher == "indexed":
        l, d = kernels.longest_match_indexed(window, buffer)
    else:
        raise ValueError(f"unknown matcher {matcher!r}")
    return MatchResult(int(l), int(d))


def extension_map(window, buffer, matcher: str = "naive",
                  backend: str | None = None) -> ExtensionMap:
    """Followers of every window occurrence of the matched suffix.

    Any occurrence may supply an extension; per token the smallest
    follower distance wins.  An occurrence ending at the newest window
    token contributes nothing (its follower lies outside the window).
    """
    kernels = get_kernels(backend)
    window = np.ascontiguousarray(window, dtype=np.int64)
    buffer = np.ascontiguousarray(buffer, dtype=np.int64)
    match = find_longest_suffix_match(window, buffer, matcher=matcher, backend=backend)
    entries: dict[int, int] = {}
    if match.l >= 1:
        vocab = int(window.max()) + 1 if window.size else 1
        deltas = kernels.extension_deltas(window, buffer, match.l, vocab)
        present = np.flatnonzero(deltas)
        entries = {int(a): int(deltas[a]) for a in present}
    return ExtensionMap(entries=entries, match=match)


def occurrence_distances(window, backend: str | None = None) -> dict[int, int]:
    """Most recent occurrence distance for each token present in the window."""
    kernels = get_kernels(backend)
    window = np.ascontiguousarray(window, dtype=np.int64)
    if window.size == 0:
        return {}
    vocab = int(window.max()) + 1
    dists = kernels.occurrence_dists(window, vocab)
    present = np.flatnonzero(dists)
    return {int(a): int(dists[a]) for a in present}
