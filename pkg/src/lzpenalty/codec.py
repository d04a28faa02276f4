"""Forward LZSS encoder/decoder with exact codelength accounting.

Blocks are idealized: costs are real-valued bits (``log2 L + log2 D + 1``
for a match, ``log2 V + 1`` for a literal) and the stream is a structured
record rather than a packed bit buffer.  Minimum match length is 1 so the
codec prices singleton matches the same way the penalty does.  Parsing is
greedy: the longest prefix wins at every position, most recent source on
ties, and sources never overlap the unencoded region.
"""

from dataclasses import dataclass

import numpy as np

from .backends import get_kernels
from .match import Context
from .oracle import codelength_vector


class CodecError(ValueError):
    """Malformed stream: a block references data that does not exist."""


@dataclass(frozen=True)
class CodeBlock:
    """One output unit: a literal token or a (length, distance) match."""

    kind: str  # "literal" | "match"
    cost_bits: float
    token: int | None = None
    length: int | None = None
    distance: int | None = None

    def __post_init__(self):
        if self.kind not in ("literal", "match"):
            raise ValueError(f"unknown block kind {self.kind!r}")


@dataclass(frozen=True)
class CodeStream:
    """Ordered blocks plus totals; decoding reproduces the input exactly."""

    blocks: tuple[CodeBlock, ...]
    total_bits: float
    original_length: int
    vocab_size: int
    window_capacity: int
    buffer_capacity: int


def literal_cost(vocab_size: int) -> float:
    return float(np.log2(vocab_size) + 1.0)


def match_cost(length: int, distance: int) -> float:
    return float(np.log2(length) + np.log2(distance) + 1.0)


def lzss_encode(tokens, vocab_size: int, window_capacity: int = 512,
                buffer_capacity: int = 32, backend: str | None = None) -> CodeStream:
    """Greedily encode ``tokens`` and account every block's bit cost."""
    data = np.ascontiguousarray(tokens, dtype=np.int64)
    if vocab_size < 1:
        raise ValueError("vocab_size must be positive")
    if buffer_capacity < 1 or window_capacity <= buffer_capacity:
        raise ValueError("need window_capacity > buffer_capacity >= 1")
    if data.size and (data.min() < 0 or data.max() >= vocab_size):
        raise ValueError("token id out of range for vocab_size")

    kernels = get_kernels(backend)
    kinds, values, dists, count = kernels.lzss_parse(
        data, window_capacity, buffer_capacity
    )

    lit_bits = literal_cost(vocab_size)
    blocks = []
    total = 0.0
    for i in range(count):
        if kinds[i] == 1:
            length = int(values[i])
            distance = int(dists[i])
            cost = match_cost(length, distance)
            blocks.append(CodeBlock("match", cost, length=length, distance=distance))
        else:
            cost = lit_bits
            blocks.append(CodeBlock("literal", cost, token=int(values[i])))
        total += cost
    return CodeStream(
        blocks=tuple(blocks),
        total_bits=total,
        original_length=int(data.size),
        vocab_size=vocab_size,
        window_capacity=window_capacity,
        buffer_capacity=buffer_capacity,
    )


def lzss_decode(stream: CodeStream) -> np.ndarray:
    """Reconstruct the encoded sequence; malformed references raise."""
    out: list[int] = []
    for i, block in enumerate(stream.blocks):
        if block.kind == "literal":
            if block.token is None or not 0 <= block.token < stream.vocab_size:
                raise CodecError(f"block {i}: literal token out of range")
            out.append(block.token)
        else:
            length = block.length
            distance = block.distance
            if length is None or distance is None or length < 1 or distance < 1:
                raise CodecError(f"block {i}: match fields missing or nonpositive")
            if distance > len(out):
                raise CodecError(
                    f"block {i}: distance {distance} exceeds emitted output {len(out)}"
                )
            if distance > stream.window_capacity:
                raise CodecError(
                    f"block {i}: distance {distance} exceeds window capacity"
                )
            if length > distance:
                raise CodecError(
                    f"block {i}: length {length} overlaps the unencoded region"
                )
            start = len(out) - distance
            out.extend(out[start:start + length])
    result = np.asarray(out, dtype=np.int64)
    if result.size != stream.original_length:
        raise CodecError(
            f"decoded {result.size} tokens, stream says {stream.original_length}"
        )
    return result


def compression_rate(stream: CodeStream) -> float:
    """Bits per token; undefined (rejected) for empty input."""
    if stream.original_length < 1:
        raise ValueError("compression rate needs at least one encoded token")
    return stream.total_bits / stream.original_length


def pmf_from_codelengths(codelengths) -> np.ndarray:
    """Kraft-style assignment p(a) proportional to 2**(-codelength(a)).

    Invariant under adding a constant to every codelength; normalized to
    sum exactly 1 in float64.
    """
    c = np.asarray(codelengths, dtype=np.float64)
    w = np.exp2(-(c - c.min()))
    return w / w.sum()


def dual_pmf(context: Context, extension_semantics: str = "any-occurrence") -> np.ndarray:
    """Next-token pmf of the compressor's dual predictor.

    Built from the brute-force marginal codelengths of the virtual first
    code block, so cheap-to-encode continuations get the largest mass.
    """
    return pmf_from_codelengths(codelength_vector(context, extension_semantics))
