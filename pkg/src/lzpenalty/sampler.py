"""Logit-to-token sampling pipeline and the generation loop.

Stage order is fixed: penalty on raw logits, then temperature, then
top-k, then top-p, then sampling.  Applying penalties before the
temperature keeps their strength independent of it.  Temperature zero
means greedy argmax (smallest token id on ties).  All randomness comes
from one seeded generator, so identical configs replay identically.
"""

from dataclasses import dataclass, field

import numpy as np

from .baselines import frequency_penalty, repetition_penalty
from .penalty import LzPenaltyConfig, apply_penalty, penalty_vector_for_tokens

PENALTY_KINDS = ("none", "lz", "frequency", "repetition")


@dataclass(frozen=True)
class SamplerConfig:
    temperature: float = 1.0
    top_k: int | None = 40
    top_p: float = 0.95
    penalty: str = "none"
    strength: float = 0.0  # frequency s or repetition theta
    lz: LzPenaltyConfig = field(default_factory=LzPenaltyConfig)
    seed: int = 0
    max_tokens: int = 256
    matcher: str = "indexed"  # lz match implementation; "naive" is the reference

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be nonnegative")
        if self.top_k is not None and self.top_k < 1:
            raise ValueError("top_k must be at least 1")
        if not 0.0 < self.top_p <= 1.0:
            raise ValueError("top_p must lie in (0, 1]")
        if self.penalty not in PENALTY_KINDS:
            raise ValueError(f"penalty must be one of {PENALTY_KINDS}")
        if self.penalty == "repetition" and self.strength < 1:
            raise ValueError("repetition penalty needs strength >= 1")
        if self.penalty == "frequency" and self.strength < 0:
            raise ValueError("frequency penalty needs strength >= 0")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be positive")


def temperature_scale(logits, temperature: float) -> tuple[np.ndarray, bool]:
    """Scale logits by 1/T; T=0 flags greedy mode instead of dividing."""
    logits = np.asarray(logits, dtype=np.float64)
    if temperature < 0:
        raise ValueError("temperature must be nonnegative")
    if temperature == 0:
        return logits.copy(), True
    return logits / temperature, False


def top_k_filter(logits, k: int) -> np.ndarray:
    """Keep the k largest logits, set the rest to -inf.

    Exactly min(k, V) entries survive; boundary ties go to the smaller
    index (stable sort on descending value).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    logits = np.asarray(logits, dtype=np.float64)
    if k >= logits.size:
        return logits.copy()
    order = np.argsort(-logits, kind="stable")
    out = np.full_like(logits, -np.inf)
    keep = order[:k]
    out[keep] = logits[keep]
    return out


def top_p_filter(probs, p: float) -> np.ndarray:
    """Renormalize over the smallest probability-sorted prefix with mass >= p.

    The top token always survives; p=1 is the identity.  A tiny slack
    (1e-12) absorbs float rounding in the cumulative sum.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("p must lie in (0, 1]")
    probs = np.asarray(probs, dtype=np.float64)
    if p >= 1.0:
        return probs.copy()
    order = np.argsort(-probs, kind="stable")
    cum = np.cumsum(probs[order])
    cut = int(np.searchsorted(cum, p - 1e-12, side="left"))
    cut = min(cut, probs.size - 1)
    keep = order[:cut + 1]
    out = np.zeros_like(probs)
    out[keep] = probs[keep]
    return out / out.sum()


def softmax(logits) -> np.ndarray:
    logits = np.asarray(logits, dtype=np.float64)
    shifted = logits - logits.max()
    w = np.exp(shifted)
    return w / w.sum()


def step_distribution(logits, config: SamplerConfig) -> tuple[np.ndarray, bool]:
    """Final sampling pmf after temperature/top-k/top-p (penalty excluded).

    Returns (pmf, greedy).  In greedy mode the pmf is a point mass on
    the argmax so the caller can treat both modes uniformly.
    """
    scaled, greedy = temperature_scale(logits, config.temperature)
    if greedy:
        probs = np.zeros(scaled.size, dtype=np.float64)
        probs[int(np.argmax(scaled))] = 1.0
        return probs, True
    if config.top_k is not None:
        scaled = top_k_filter(scaled, config.top_k)
    probs = softmax(scaled)
    probs = top_p_filter(probs, config.top_p)
    return probs, False


def penalized_logits(logits, context_tokens, config: SamplerConfig,
                     vocab_size: int) -> np.ndarray:
    """Apply the configured penalty to raw logits."""
    if config.penalty == "none":
        return np.asarray(logits, dtype=np.float64).copy()
    if config.penalty == "lz":
        if config.lz.alpha == 0:
            return np.asarray(logits, dtype=np.float64).copy()
        pv = penalty_vector_for_tokens(
            context_tokens, vocab_size, config.lz, matcher=config.matcher
        )
        return apply_penalty(logits, pv, config.lz.alpha)
    if config.penalty == "frequency":
        return frequency_penalty(logits, context_tokens, config.strength)
    if config.penalty == "repetition":
        return repetition_penalty(logits, context_tokens, config.strength)
    raise ValueError(f"unknown penalty {config.penalty!r}")


def sample_step(logits, context_tokens, config: SamplerConfig,
                rng: np.random.Generator, vocab_size: int) -> int:
    logits = penalized_logits(logits, context_tokens, config, vocab_size)
    probs, greedy = step_distribution(logits, config)
    if greedy:
        return int(np.argmax(probs))
    return int(rng.choice(probs.size, p=probs))


def generate(model, config: SamplerConfig, prompt=()) -> np.ndarray:
    """Roll the sampling loop ``max_tokens`` steps from ``prompt``.

    The model provides ``vocab_size`` and ``next_pmf(context)``; logits
    are the natural log of that pmf.  Returns only the generated tokens.
    """
    vocab = model.vocab_size
    prompt = np.asarray(prompt, dtype=np.int64)
    if prompt.size and (prompt.min() < 0 or prompt.max() >= vocab):
        raise ValueError("prompt token out of range for the model vocabulary")
    end_token = getattr(model, "end_token", None)
    rng = np.random.default_rng(config.seed)

    context = list(int(t) for t in prompt)
    out: list[int] = []
    for _ in range(config.max_tokens):
        ctx = np.asarray(context, dtype=np.int64)
        logits = np.log(model.next_pmf(ctx))
        token = sample_step(logits, ctx, config, rng, vocab)
        out.append(token)
        context.append(token)
        if end_token is not None and token == end_token:
            break
    return np.asarray(out, dtype=np.int64)
