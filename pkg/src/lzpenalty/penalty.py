"""Per-token LZ penalty vectors and their application to logits.

The penalty for candidate token ``a`` is the marginal sliding-window
codelength of ``a`` given the current context, with per-step constants
dropped (softmax shifts cancel them):

- ``log2((l+1) * delta) - log2(l * d) - 1`` when ``a`` extends the
  canonical length-``l`` match (reachable only for ``l >= 1``);
- ``log2 delta`` when ``a`` occurs in the window at distance ``delta``
  but does not extend the match;
- ``log2 V`` when ``a`` is absent from the window.

Values are real-valued bits.  The extension branch is evaluated in the
product form above; the algebraically collapsed variant is avoided on
purpose (it does not reduce to the same quantity).

Tokens that would continue a long recent repetition land deep in the
extension branch and get boosted least (their values go negative), so
adding ``alpha * penalty`` to the logits suppresses exactly the most
compressible continuations.
"""

from dataclasses import dataclass

import numpy as np

from .backends import get_kernels
from .match import Context, simulate_views

EXTENSION_SEMANTICS = ("any-occurrence", "canonical-only")


@dataclass(frozen=True)
class LzPenaltyConfig:
    """Penalty strength plus the simulated compressor geometry."""

    alpha: float = 0.15
    window_capacity: int = 512
    buffer_capacity: int = 32
    extension_semantics: str = "any-occurrence"

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.window_capacity < 1 or self.buffer_capacity < 1:
            raise ValueError("window and buffer capacities must be positive")
        if self.buffer_capacity >= self.window_capacity:
            raise ValueError("buffer_capacity must be smaller than window_capacity")
        if self.extension_semantics not in EXTENSION_SEMANTICS:
            raise ValueError(
                f"extension_semantics must be one of {EXTENSION_SEMANTICS}"
            )


def penalty_vector(context: Context, config: LzPenaltyConfig | None = None,
                   matcher: str = "naive", backend: str | None = None) -> np.ndarray:
    """Penalty value in bits for every token id in [0, vocab_size).

    The window/buffer views come from the context itself; ``config``
    supplies the extension semantics.  With an empty window every value
    is exactly ``log2 vocab_size``.
    """
    if config is None:
        config = LzPenaltyConfig()
    kernels = get_kernels(backend)
    window, buffer = simulate_views(context)
    window = np.ascontiguousarray(window, dtype=np.int64)
    buffer = np.ascontiguousarray(buffer, dtype=np.int64)
    vocab = context.vocab_size

    values = np.full(vocab, np.log2(vocab), dtype=np.float64)
    if window.size == 0:
        return values

    if matcher == "naive":
        l, d = kernels.longest_match_naive(window, buffer)
    elif matcher == "indexed":
        l, d = kernels.longest_match_indexed(window, buffer)
    else:
        raise ValueError(f"unknown matcher {matcher!r}")
    l = int(l)
    d = int(d)

    occ = kernels.occurrence_dists(window, vocab)
    in_window = occ > 0
    values[in_window] = np.log2(occ[in_window])

    if l >= 1:
        if config.extension_semantics == "any-occurrence":
            ext = kernels.extension_deltas(window, buffer, l, vocab)
            extending = ext > 0
            if extending.any():
                deltas = ext[extending].astype(np.float64)
                values[extending] = (
                    np.log2((l + 1) * deltas) - np.log2(float(l) * d) - 1.0
                )
        else:
            # canonical-only: just the follower of the most recent occurrence
            if d > 1:
                follower = int(window[window.shape[0] - d + 1])
                delta = d - 1
                values[follower] = (
                    np.log2((l + 1) * float(delta)) - np.log2(float(l) * d) - 1.0
                )
    return values


def penalty_vector_for_tokens(tokens, vocab_size: int,
                              config: LzPenaltyConfig | None = None,
                              matcher: str = "naive",
                              backend: str | None = None) -> np.ndarray:
    """Convenience wrapper building the Context from the config geometry."""
    if config is None:
        config = LzPenaltyConfig()
    context = Context(
        np.asarray(tokens, dtype=np.int64),
        vocab_size,
        config.window_capacity,
        config.buffer_capacity,
    )
    return penalty_vector(context, config, matcher=matcher, backend=backend)


def apply_penalty(logits, penalty: np.ndarray, alpha: float) -> np.ndarray:
    """Return ``logits + alpha * penalty`` without touching the input."""
    logits = np.asarray(logits, dtype=np.float64)
    penalty = np.asarray(penalty, dtype=np.float64)
    if logits.shape != penalty.shape:
        raise ValueError(
            f"logits shape {logits.shape} does not match penalty shape {penalty.shape}"
        )
    return logits + alpha * penalty
