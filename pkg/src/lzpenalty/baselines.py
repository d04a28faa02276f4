"""Industry-standard penalties used as experimental baselines.

Both depend only on token membership or counts in the context, never on
order, which is exactly the weakness the sliding-window penalty avoids.
"""

from dataclasses import dataclass

import numpy as np

# standard strength sweeps for the experiment harness
FREQUENCY_SWEEP = (0.0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 0.9, 1.0)
REPETITION_SWEEP = (1.0, 1.1, 1.2, 1.25, 1.3, 1.5)


@dataclass(frozen=True)
class BaselineConfig:
    kind: str  # "frequency" | "repetition"
    strength: float

    def __post_init__(self):
        if self.kind == "frequency":
            if self.strength < 0:
                raise ValueError("frequency strength must be nonnegative")
        elif self.kind == "repetition":
            if self.strength < 1:
                raise ValueError("repetition strength must be at least 1")
        else:
            raise ValueError(f"unknown baseline kind {self.kind!r}")


def frequency_penalty(logits, context, strength: float) -> np.ndarray:
    """Subtract ``strength * count(token in context)`` from each logit.

    Counts run over the entire context with no window, so long
    generations keep accumulating penalty on common tokens.
    """
    if strength < 0:
        raise ValueError("frequency strength must be nonnegative")
    logits = np.asarray(logits, dtype=np.float64).copy()
    context = np.asarray(context, dtype=np.int64)
    if strength == 0 or context.size == 0:
        return logits
    counts = np.bincount(context, minlength=logits.size)[:logits.size]
    return logits - strength * counts


def repetition_penalty(logits, context, theta: float) -> np.ndarray:
    """Divide positive / multiply negative logits of seen tokens by theta.

    The sign never flips and theta=1 is exactly the identity; the
    penalty is binary in membership, blind to how often a token
    appeared.
    """
    if theta < 1:
        raise ValueError("repetition strength must be at least 1")
    logits = np.asarray(logits, dtype=np.float64).copy()
    context = np.asarray(context, dtype=np.int64)
    if theta == 1 or context.size == 0:
        return logits
    seen = np.unique(context)
    seen = seen[(seen >= 0) & (seen < logits.size)]
    vals = logits[seen]
    logits[seen] = np.where(vals > 0, vals / theta, vals * theta)
    return logits
