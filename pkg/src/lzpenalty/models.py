"""Desk-scale language models for penalty experiments.

Byte-level throughout: the default vocabulary is the 256 byte values,
so corpora are plain files and log2(V) stays at 8 bits.
"""

from pathlib import Path

import numpy as np


class LoopModel:
    """Synthetic model that wants to repeat whatever it said last.

    Puts ``repeat_mass`` on the previous token and spreads the remainder
    uniformly over the rest; uniform when there is no history.  Greedy
    decoding without a penalty therefore degenerates immediately.
    """

    end_token = None

    def __init__(self, repeat_mass: float, vocab_size: int = 256):
        if not 0.0 < repeat_mass < 1.0:
            raise ValueError("repeat_mass must lie strictly between 0 and 1")
        if vocab_size < 2:
            raise ValueError("vocab_size must be at least 2")
        self.repeat_mass = repeat_mass
        self.vocab_size = vocab_size

    def next_pmf(self, context) -> np.ndarray:
        context = np.asarray(context, dtype=np.int64)
        if context.size == 0:
            return np.full(self.vocab_size, 1.0 / self.vocab_size)
        rest = (1.0 - self.repeat_mass) / (self.vocab_size - 1)
        pmf = np.full(self.vocab_size, rest)
        pmf[int(context[-1])] = self.repeat_mass
        return pmf


class NgramModel:
    """Order-k counting model with add-epsilon smoothing.

    The smoothing keeps every next-token probability strictly positive,
    which the arithmetic coder and cross-entropy metrics rely on.
    """

    end_token = None

    def __init__(self, order: int, vocab_size: int = 256, eps: float = 0.1):
        if order < 1:
            raise ValueError("order must be at least 1")
        if eps <= 0:
            raise ValueError("eps must be positive")
        self.order = order
        self.vocab_size = vocab_size
        self.eps = eps
        self._counts: dict[tuple[int, ...], dict[int, int]] = {}
        self._totals: dict[tuple[int, ...], int] = {}

    def observe(self, context_key: tuple[int, ...], nxt: int):
        slot = self._counts.setdefault(context_key, {})
        slot[nxt] = slot.get(nxt, 0) + 1
        self._totals[context_key] = self._totals.get(context_key, 0) + 1

    def next_pmf(self, context) -> np.ndarray:
        context = np.asarray(context, dtype=np.int64)
        key = tuple(int(t) for t in context[-self.order:]) if context.size else ()
        total = self._totals.get(key, 0)
        denom = total + self.eps * self.vocab_size
        pmf = np.full(self.vocab_size, self.eps / denom)
        if total:
            for nxt, count in self._counts[key].items():
                pmf[nxt] = (count + self.eps) / denom
        return pmf


def load_corpus(path) -> np.ndarray:
    """Read a file as byte tokens in [0, 256)."""
    data = Path(path).read_bytes()
    return np.frombuffer(data, dtype=np.uint8).astype(np.int64)


def train_ngram(tokens, order: int, eps: float = 0.1,
                vocab_size: int = 256) -> NgramModel:
    """Count all (context, next) pairs of the corpus."""
    tokens = np.asarray(tokens, dtype=np.int64)
    if tokens.size <= order:
        raise ValueError(
            f"corpus of {tokens.size} tokens is too short for order {order}"
        )
    if tokens.size and (tokens.min() < 0 or tokens.max() >= vocab_size):
        raise ValueError("corpus token out of range for vocab_size")
    model = NgramModel(order, vocab_size=vocab_size, eps=eps)
    as_ints = [int(t) for t in tokens]
    for i in range(order, len(as_ints)):
        key = tuple(as_ints[i - order:i])
        model.observe(key, as_ints[i])
    return model


def model_from_spec(spec: str):
    """Build a model from a CLI spec string.

    Formats: ``ngram:<order>:<corpus-path>`` and ``loop:<p>[:<vocab>]``.
    """
    parts = spec.split(":")
    kind = parts[0]
    if kind == "loop":
        if len(parts) not in (2, 3):
            raise ValueError(f"bad loop spec {spec!r}, expected loop:<p>[:<vocab>]")
        p = float(parts[1])
        vocab = int(parts[2]) if len(parts) == 3 else 256
        return LoopModel(p, vocab_size=vocab)
    if kind == "ngram":
        if len(parts) < 3:
            raise ValueError(f"bad ngram spec {spec!r}, expected ngram:<order>:<path>")
        order = int(parts[1])
        path = ":".join(parts[2:])  # paths may contain colons
        return train_ngram(load_corpus(path), order)
    raise ValueError(f"unknown model kind {kind!r} in spec {spec!r}")
