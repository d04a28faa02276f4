"""Degenerate-repetition detection, sweep experiments, microbenchmarks."""

import time
from dataclasses import dataclass

import numpy as np

from .evals_csv import BENCH_HEADER, SWEEP_HEADER, bench_to_csv, sweep_to_csv  # noqa: F401
from .models import model_from_spec
from .penalty import LzPenaltyConfig, apply_penalty, penalty_vector_for_tokens
from .sampler import SamplerConfig, generate, step_distribution


@dataclass(frozen=True)
class RepetitionVerdict:
    """Outcome of the consecutive-repetition scan.

    ``degenerate`` is true iff some block of length >= 1 repeats at
    least ``threshold`` times back to back.  The reported run is the one
    at the earliest position, with the shortest period among runs
    starting there.
    """

    degenerate: bool
    pattern: np.ndarray
    repeat_count: int
    start_index: int


_CLEAN = RepetitionVerdict(False, np.empty(0, dtype=np.int64), 0, -1)


def detect_degenerate(tokens, threshold: int = 20) -> RepetitionVerdict:
    """Scan for a block repeated ``threshold`` or more times consecutively.

    One linear pass per candidate period p (p-periodicity shows up as a
    run of True in ``x[p:] == x[:-p]`` of length >= (threshold-1)*p).
    Periods above n/threshold cannot qualify and are skipped.
    """
    if threshold < 2:
        raise ValueError("threshold must be at least 2")
    x = np.asarray(tokens, dtype=np.int64)
    n = x.size
    best: tuple[int, int] | None = None  # (start, period), lexicographic
    best_count = 0
    for period in range(1, n // threshold + 1):
        eq = x[period:] == x[:-period]
        need = (threshold - 1) * period
        edges = np.diff(np.concatenate(([0], eq.astype(np.int8), [0])))
        starts = np.flatnonzero(edges == 1)
        lengths = np.flatnonzero(edges == -1) - starts
        ok = lengths >= need
        if not ok.any():
            continue
        idx = int(np.flatnonzero(ok)[0])
        cand = (int(starts[idx]), period)
        if best is None or cand < best:
            best = cand
            best_count = int(lengths[idx]) // period + 1
    if best is None:
        return _CLEAN
    start, period = best
    return RepetitionVerdict(True, x[start:start + period].copy(), best_count, start)


def degenerate_runs(tokens, threshold: int = 20) -> list[RepetitionVerdict]:
    """All non-overlapping degenerate runs, left to right.

    More than one run with distinct patterns is the token-cycling
    signature (a block repeats until something knocks it over, then the
    next block takes its place).
    """
    x = np.asarray(tokens, dtype=np.int64)
    runs: list[RepetitionVerdict] = []
    pos = 0
    while pos < x.size:
        verdict = detect_degenerate(x[pos:], threshold)
        if not verdict.degenerate:
            break
        absolute = RepetitionVerdict(
            True, verdict.pattern, verdict.repeat_count, pos + verdict.start_index
        )
        runs.append(absolute)
        pos = absolute.start_index + verdict.pattern.size * verdict.repeat_count
    return runs


def xent_under_model(model, tokens, prefix=None) -> float:
    """Average cross-entropy of ``tokens`` under the model, bits/token."""
    tokens = np.asarray(tokens, dtype=np.int64)
    if tokens.size < 1:
        raise ValueError("need at least one token")
    history = [int(t) for t in np.asarray(prefix, dtype=np.int64)] if prefix is not None else []
    bits = 0.0
    for t in tokens:
        pmf = model.next_pmf(np.asarray(history, dtype=np.int64))
        p = float(pmf[int(t)])
        if p <= 0:
            raise ValueError("model assigned zero probability to an observed token")
        bits -= np.log2(p)
        history.append(int(t))
    return bits / tokens.size


def distinct_n(tokens, n: int = 2) -> float:
    """Unique n-grams over total n-grams; 1.0 for sequences shorter than n."""
    x = np.asarray(tokens, dtype=np.int64)
    total = x.size - n + 1
    if total <= 0:
        return 1.0
    grams = {tuple(x[i:i + n]) for i in range(total)}
    return len(grams) / total


def run_sweep(model_spec, penalty: str, strengths, temperatures,
              n_seeds: int = 5, max_tokens: int = 256, prompt_len: int = 64,
              window_capacity: int = 512, buffer_capacity: int = 32,
              top_k: int | None = 40, top_p: float = 0.95,
              threshold: int = 20, matcher: str = "indexed") -> list[dict]:
    """Grid of (strength x temperature) cells, n_seeds runs per cell.

    Each seeded run draws a fresh random prompt, generates, and scores
    repetition rate, cross-entropy under the generating model, and
    distinct-2.  Output is a pure function of the arguments.
    """
    model = model_from_spec(model_spec) if isinstance(model_spec, str) else model_spec
    if not strengths or not temperatures:
        raise ValueError("sweep grid must be non-empty")
    rows = []
    for strength in strengths:
        for temperature in temperatures:
            degenerate = 0
            xents = []
            d2s = []
            for seed in range(n_seeds):
                prompt_rng = np.random.default_rng([seed, 0xC0FFEE])
                prompt = (
                    prompt_rng.integers(0, model.vocab_size, prompt_len)
                    if prompt_len else np.empty(0, dtype=np.int64)
                )
                config = _cell_config(
                    penalty, strength, temperature, seed, max_tokens,
                    window_capacity, buffer_capacity, top_k, top_p, matcher,
                )
                gen = generate(model, config, prompt)
                if detect_degenerate(gen, threshold).degenerate:
                    degenerate += 1
                xents.append(xent_under_model(model, gen, prefix=prompt))
                d2s.append(distinct_n(gen, 2))
            rows.append({
                "penalty": penalty,
                "strength": float(strength),
                "temperature": float(temperature),
                "seed_count": n_seeds,
                "repetition_rate": degenerate / n_seeds,
                "mean_xent_bits": float(np.mean(xents)),
                "distinct2": float(np.mean(d2s)),
            })
    rows.sort(key=lambda r: (r["penalty"], r["strength"], r["temperature"]))
    return rows


def _cell_config(penalty, strength, temperature, seed, max_tokens,
                 window_capacity, buffer_capacity, top_k, top_p, matcher):
    lz_alpha = float(strength) if penalty == "lz" else 0.15
    baseline_strength = float(strength) if penalty in ("frequency", "repetition") else 0.0
    return SamplerConfig(
        temperature=float(temperature),
        top_k=top_k,
        top_p=top_p,
        penalty=penalty,
        strength=baseline_strength,
        lz=LzPenaltyConfig(
            alpha=lz_alpha,
            window_capacity=window_capacity,
            buffer_capacity=buffer_capacity,
        ),
        seed=seed,
        max_tokens=max_tokens,
        matcher=matcher,
    )


def run_bench(vocab_sizes, window_sizes, buffer_capacity: int = 32,
              iterations: int = 200, alpha: float = 0.15,
              matcher: str = "indexed", backend: str | None = None,
              seed: int = 0) -> list[dict]:
    """Latency of the per-step penalty versus a plain sampling step.

    Contexts are synthetic random sequences long enough to fill the
    window and buffer.  The plain step (temperature, top-k, top-p over
    random logits) is the denominator of ``overhead_pct``.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for vocab in vocab_sizes:
        for window in window_sizes:
            config = LzPenaltyConfig(
                alpha=alpha,
                window_capacity=window,
                buffer_capacity=buffer_capacity,
            )
            length = window + buffer_capacity + 16
            contexts = [
                rng.integers(0, vocab, length) for _ in range(min(iterations, 16))
            ]
            logits = rng.standard_normal(vocab)

            def penalty_step(i):
                # mirrors the sampler: alpha=0 skips the computation
                if config.alpha == 0:
                    return logits.copy()
                pv = penalty_vector_for_tokens(
                    contexts[i % len(contexts)], vocab, config,
                    matcher=matcher, backend=backend,
                )
                return apply_penalty(logits, pv, config.alpha)

            penalty_step(0)  # warm any JIT path before timing
            pen_times = _time_loop(iterations, penalty_step)
            plain_cfg = SamplerConfig(penalty="none")
            step_distribution(logits, plain_cfg)
            plain_times = _time_loop(
                iterations, lambda i: step_distribution(logits, plain_cfg)
            )
            median_us = float(np.median(pen_times)) * 1e6
            p99_us = float(np.percentile(pen_times, 99)) * 1e6
            plain_us = float(np.median(plain_times)) * 1e6
            rows.append({
                "V": int(vocab),
                "W": int(window),
                "B": int(buffer_capacity),
                "median_us": median_us,
                "p99_us": p99_us,
                "overhead_pct": 100.0 * median_us / plain_us if plain_us > 0 else 0.0,
            })
    return rows


def _time_loop(iterations, fn):
    times = np.empty(iterations)
    for i in range(iterations):
        t0 = time.perf_counter()
        fn(i)
        times[i] = time.perf_counter() - t0
    return times
