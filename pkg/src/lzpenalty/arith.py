"""Arithmetic coder driven by an arbitrary causal pmf provider.

Finite-precision integer implementation with the classic E1/E2/E3
renormalization.  State registers are 64-bit; pmfs are quantized to
48-bit integer frequencies, which keeps the per-symbol rounding loss
far below the 2-bit total redundancy budget of the emitted code:

    len(bits) <= -sum(log2 p(x_i | x_<i)) + 2

The provider must return strictly positive pmfs for symbols that can
actually occur; encoding a symbol whose quantized frequency is zero is
an error, never silently patched.
"""

import numpy as np

STATE_BITS = 64
FREQ_BITS = 48
_FULL = 1 << STATE_BITS
_HALF = _FULL >> 1
_QUARTER = _FULL >> 2
_MASK = _FULL - 1
_TOTAL = 1 << FREQ_BITS


class ZeroProbabilityError(ValueError):
    """The stream contains a symbol the provider assigned zero mass."""


def _cumulative_freqs(pmf) -> np.ndarray:
    """Quantize a pmf to integer frequencies; returns cumulative counts.

    Positive probabilities below the quantization step are clamped to
    frequency 1 so they stay encodable; exact zeros stay zero.
    """
    p = np.asarray(pmf, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("pmf must be a nonempty 1-d array")
    freqs = np.rint(p * _TOTAL).astype(np.int64)
    freqs[(p > 0) & (freqs == 0)] = 1
    freqs[p <= 0] = 0
    cum = np.zeros(p.size + 1, dtype=np.int64)
    np.cumsum(freqs, out=cum[1:])
    if cum[-1] <= 0:
        raise ValueError("pmf has no positive mass")
    return cum


class _Encoder:
    def __init__(self):
        self.low = 0
        self.high = _MASK
        self.pending = 0
        self.bits: list[int] = []

    def encode(self, cum_low: int, cum_high: int, total: int):
        span = self.high - self.low + 1
        self.high = self.low + (cum_high * span) // total - 1
        self.low = self.low + (cum_low * span) // total
        while True:
            if self.high < _HALF:
                self._emit(0)
            elif self.low >= _HALF:
                self._emit(1)
                self.low -= _HALF
                self.high -= _HALF
            elif self.low >= _QUARTER and self.high < _HALF + _QUARTER:
                self.pending += 1
                self.low -= _QUARTER
                self.high -= _QUARTER
            else:
                return
            self.low <<= 1
            self.high = (self.high << 1) | 1

    def _emit(self, bit: int):
        self.bits.append(bit)
        if self.pending:
            self.bits.extend([1 - bit] * self.pending)
            self.pending = 0

    def finish(self) -> np.ndarray:
        # one final bit disambiguates the interval; decoder pads zeros
        self.pending += 1
        self._emit(0 if self.low < _QUARTER else 1)
        return np.asarray(self.bits, dtype=np.uint8)


class _Decoder:
    def __init__(self, bits: np.ndarray):
        self.bits = np.asarray(bits, dtype=np.uint8)
        self.pos = 0
        self.low = 0
        self.high = _MASK
        self.code = 0
        for _ in range(STATE_BITS):
            self.code = (self.code << 1) | self._next_bit()

    def _next_bit(self) -> int:
        if self.pos < self.bits.size:
            bit = int(self.bits[self.pos])
            self.pos += 1
            return bit
        return 0  # past the end of the code: an infinity of zeros

    def decode(self, cum: np.ndarray) -> int:
        total = int(cum[-1])
        span = self.high - self.low + 1
        value = ((self.code - self.low + 1) * total - 1) // span
        symbol = int(np.searchsorted(cum, value, side="right")) - 1
        cum_low = int(cum[symbol])
        cum_high = int(cum[symbol + 1])
        self.high = self.low + (cum_high * span) // total - 1
        self.low = self.low + (cum_low * span) // total
        while True:
            if self.high < _HALF:
                pass
            elif self.low >= _HALF:
                self.low -= _HALF
                self.high -= _HALF
                self.code -= _HALF
            elif self.low >= _QUARTER and self.high < _HALF + _QUARTER:
                self.low -= _QUARTER
                self.high -= _QUARTER
                self.code -= _QUARTER
            else:
                return symbol
            self.low <<= 1
            self.high = (self.high << 1) | 1
            self.code = (self.code << 1) | self._next_bit()


def ac_encode(tokens, pmf_provider) -> np.ndarray:
    """Encode ``tokens`` against causal pmfs; returns a 0/1 uint8 array.

    ``pmf_provider(prefix)`` is called with the already-encoded prefix
    (int64 array) and must return the next-token pmf.
    """
    data = np.asarray(tokens, dtype=np.int64)
    enc = _Encoder()
    for i in range(data.size):
        cum = _cumulative_freqs(pmf_provider(data[:i]))
        symbol = int(data[i])
        if not 0 <= symbol < cum.size - 1:
            raise ValueError(f"token {symbol} outside the provider's vocabulary")
        cum_low = int(cum[symbol])
        cum_high = int(cum[symbol + 1])
        if cum_low == cum_high:
            raise ZeroProbabilityError(
                f"symbol {symbol} at position {i} has zero probability"
            )
        enc.encode(cum_low, cum_high, int(cum[-1]))
    return enc.finish()


def ac_decode(bits, pmf_provider, count: int) -> np.ndarray:
    """Decode ``count`` tokens from ``bits`` using the same causal pmfs."""
    dec = _Decoder(bits)
    out = np.empty(count, dtype=np.int64)
    for i in range(count):
        cum = _cumulative_freqs(pmf_provider(out[:i]))
        out[i] = dec.decode(cum)
    return out
