"""Command line interface: generate, sweep, bench, compress, trace.

Outputs are deterministic for a fixed seed (timings from ``bench``
excepted); everything data-bearing goes to stdout so runs can be
diffed byte for byte.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .backends import active_backend
from .baselines import FREQUENCY_SWEEP, REPETITION_SWEEP
from .codec import compression_rate, lzss_encode
from .evals import bench_to_csv, run_bench, run_sweep, sweep_to_csv
from .match import (
    Context,
    extension_map,
    find_longest_suffix_match,
    occurrence_distances,
    simulate_views,
)
from .models import model_from_spec
from .penalty import LzPenaltyConfig, penalty_vector
from .sampler import SamplerConfig, generate


def read_token_file(path, fmt: str = "auto") -> np.ndarray:
    """Load tokens from newline-separated integers or raw bytes.

    ``auto`` tries the integer format first and falls back to bytes.
    """
    raw = Path(path).read_bytes()
    if fmt in ("auto", "ints"):
        try:
            text = raw.decode("ascii")
            fields = text.split()
            tokens = [int(f) for f in fields]
            if all(t >= 0 for t in tokens):
                return np.asarray(tokens, dtype=np.int64)
            if fmt == "ints":
                raise ValueError("negative token id")
        except (UnicodeDecodeError, ValueError):
            if fmt == "ints":
                raise ValueError(f"{path}: not a newline-separated integer file")
    return np.frombuffer(raw, dtype=np.uint8).astype(np.int64)


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Pull key=value defaults from --config before the real parse."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        parser.error("--config needs a file path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2:]
    defaults = {}
    try:
        for line_no, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                parser.error(f"{path}:{line_no}: expected key=value")
            key, value = line.split("=", 1)
            defaults[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    subparsers = [
        sub
        for action in parser._actions
        if isinstance(action, argparse._SubParsersAction)
        for sub in action.choices.values()
    ]
    known = {a.dest for a in parser._actions}
    for sub in subparsers:
        known.update(a.dest for a in sub._actions)
    for key, value in defaults.items():
        if key not in known:
            parser.error(f"{path}: unknown config key {key!r}")
        # subparsers re-parse into a fresh namespace, so defaults must be
        # planted on every parser that owns the destination
        parser.set_defaults(**{key: value})
        for sub in subparsers:
            if any(a.dest == key for a in sub._actions):
                sub.set_defaults(**{key: value})
    return rest


def _lz_config(args) -> LzPenaltyConfig:
    return LzPenaltyConfig(
        alpha=float(args.alpha),
        window_capacity=int(args.window),
        buffer_capacity=int(args.buffer),
    )


def _cmd_generate(args) -> int:
    model = model_from_spec(args.model)
    prompt = (
        read_token_file(args.prompt_file) if args.prompt_file
        else np.empty(0, dtype=np.int64)
    )
    config = SamplerConfig(
        temperature=float(args.temperature),
        top_k=None if int(args.top_k) == 0 else int(args.top_k),
        top_p=float(args.top_p),
        penalty=args.penalty,
        strength=float(args.strength),
        lz=_lz_config(args),
        seed=int(args.seed),
        max_tokens=int(args.max_tokens),
    )
    tokens = generate(model, config, prompt)
    if args.output == "json":
        record = {
            "model": args.model,
            "penalty": args.penalty,
            "seed": int(args.seed),
            "tokens": [int(t) for t in tokens],
        }
        print(json.dumps(record))
    else:
        print(_render_tokens(tokens, model.vocab_size))
    return 0


def _render_tokens(tokens, vocab_size: int) -> str:
    if vocab_size <= 256:
        return bytes(int(t) for t in tokens).decode("utf-8", errors="replace")
    return " ".join(str(int(t)) for t in tokens)


def _cmd_sweep(args) -> int:
    strengths = (
        [float(s) for s in args.strengths.split(",")]
        if args.strengths else list(_default_strengths(args.penalty))
    )
    temperatures = [float(t) for t in args.temperatures.split(",")]
    rows = run_sweep(
        args.model,
        args.penalty,
        strengths,
        temperatures,
        n_seeds=int(args.seeds),
        max_tokens=int(args.max_tokens),
        prompt_len=int(args.prompt_len),
        window_capacity=int(args.window),
        buffer_capacity=int(args.buffer),
        threshold=int(args.threshold),
    )
    _emit(sweep_to_csv(rows), args.out)
    return 0


def _default_strengths(penalty: str):
    if penalty == "frequency":
        return FREQUENCY_SWEEP
    if penalty == "repetition":
        return REPETITION_SWEEP
    if penalty == "lz":
        return (0.15,)
    return (0.0,)


def _cmd_bench(args) -> int:
    rows = run_bench(
        [int(v) for v in args.vocab.split(",")],
        [int(w) for w in args.window.split(",")],
        buffer_capacity=int(args.buffer),
        iterations=int(args.iterations),
        alpha=float(args.alpha),
        matcher=args.matcher,
        backend=args.backend,
        seed=int(args.seed),
    )
    _emit(bench_to_csv(rows), args.out)
    return 0


def _cmd_compress(args) -> int:
    tokens = read_token_file(args.input, args.format)
    vocab = int(args.vocab)
    if tokens.size and int(tokens.max()) >= vocab:
        raise ValueError(
            f"token {int(tokens.max())} needs --vocab > {int(tokens.max())}"
        )
    stream = lzss_encode(
        tokens, vocab,
        window_capacity=int(args.window),
        buffer_capacity=int(args.buffer),
    )
    if args.emit_blocks:
        for block in stream.blocks:
            if block.kind == "match":
                print(f"L={block.length} D={block.distance}")
            else:
                print(f"LIT={block.token}")
    rate = compression_rate(stream) if stream.original_length else 0.0
    print(
        f"blocks={len(stream.blocks)} tokens={stream.original_length} "
        f"bits={stream.total_bits:.6f} rate={rate:.6f}"
    )
    return 0


def _cmd_trace(args) -> int:
    tokens = read_token_file(args.input, args.format)
    vocab = int(args.vocab)
    if tokens.size and int(tokens.max()) >= vocab:
        raise ValueError(
            f"token {int(tokens.max())} needs --vocab > {int(tokens.max())}"
        )
    config = _lz_config(args)
    n = tokens.size
    if args.final_only:
        positions = [n]
    else:
        start = max(1, n - int(args.limit) + 1) if args.limit else 1
        positions = list(range(start, n + 1))

    steps = []
    for pos in positions:
        context = Context(
            tokens[:pos], vocab, config.window_capacity, config.buffer_capacity
        )
        window, buffer = simulate_views(context)
        match = find_longest_suffix_match(window, buffer)
        values = penalty_vector(context, config)
        order = np.argsort(values, kind="stable")
        top = int(args.top)
        penalized = [(int(a), float(values[a])) for a in order[:top]]
        boosted = [(int(a), float(values[a])) for a in order[::-1][:top]]
        counts = _class_counts(vocab, window, buffer)
        step = {
            "step": pos,
            "l": match.l,
            "d": match.d,
            "counts": counts,
            "penalized": penalized,
            "boosted": boosted,
        }
        if args.emit_vector:
            step["values"] = [float(v) for v in values]
        steps.append(step)

    if args.output == "json":
        print(json.dumps({
            "vocab": vocab,
            "window": config.window_capacity,
            "buffer": config.buffer_capacity,
            "alpha": config.alpha,
            "steps": steps,
        }))
    else:
        for step in steps:
            c = step["counts"]
            pen = " ".join(f"{a}:{v:+.3f}" for a, v in step["penalized"])
            boo = " ".join(f"{a}:{v:+.3f}" for a, v in step["boosted"])
            print(
                f"step={step['step']} l={step['l']} d={step['d']} "
                f"ext={c['extension']} win={c['window']} novel={c['novel']} | "
                f"penalized: {pen} | boosted: {boo}"
            )
    return 0


def _class_counts(vocab: int, window, buffer) -> dict:
    ext = extension_map(window, buffer)
    occ = occurrence_distances(window)
    n_ext = len(ext.entries)
    return {
        "extension": n_ext,
        "window": len(occ) - n_ext,
        "novel": vocab - len(occ),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzpenalty",
        description="Sliding-window compression penalty toolkit "
                    f"(kernel backend: {active_backend()})",
    )
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="key=value defaults, overridden by flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample tokens from a toy model")
    p.add_argument("--model", required=True,
                   help="ngram:<order>:<corpus> or loop:<p>[:<vocab>]")
    p.add_argument("--prompt-file", default=None)
    p.add_argument("--temperature", default=1.0, type=float)
    p.add_argument("--top-k", default=40, type=int, help="0 disables")
    p.add_argument("--top-p", default=0.95, type=float)
    p.add_argument("--penalty", default="none",
                   choices=["none", "lz", "repetition", "frequency"])
    p.add_argument("--strength", default=0.0, type=float,
                   help="frequency s or repetition theta")
    p.add_argument("--alpha", default=0.15, type=float)
    p.add_argument("--window", default=512, type=int)
    p.add_argument("--buffer", default=32, type=int)
    p.add_argument("--seed", default=0, type=int)
    p.add_argument("--max-tokens", default=256, type=int)
    p.add_argument("--output", default="text", choices=["text", "json"])
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("sweep", help="repetition/quality grid over strengths")
    p.add_argument("--model", required=True)
    p.add_argument("--penalty", default="none",
                   choices=["none", "lz", "repetition", "frequency"])
    p.add_argument("--strengths", default=None,
                   help="comma list; defaults to the standard sweep per penalty")
    p.add_argument("--temperatures", default="0")
    p.add_argument("--seeds", default=5, type=int)
    p.add_argument("--max-tokens", default=256, type=int)
    p.add_argument("--prompt-len", default=64, type=int)
    p.add_argument("--window", default=512, type=int)
    p.add_argument("--buffer", default=32, type=int)
    p.add_argument("--threshold", default=20, type=int)
    p.add_argument("--out", default=None, help="CSV path, default stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bench", help="penalty latency microbenchmark")
    p.add_argument("--vocab", default="131072", help="comma list")
    p.add_argument("--window", default="512", help="comma list")
    p.add_argument("--buffer", default=32, type=int)
    p.add_argument("--iterations", default=200, type=int)
    p.add_argument("--alpha", default=0.15, type=float)
    p.add_argument("--matcher", default="indexed", choices=["naive", "indexed"])
    p.add_argument("--backend", default=None, choices=["numba", "numpy"])
    p.add_argument("--seed", default=0, type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("compress", help="LZSS codelength accounting for a file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", default="auto", choices=["auto", "ints", "bytes"])
    p.add_argument("--vocab", default=256, type=int)
    p.add_argument("--window", default=512, type=int)
    p.add_argument("--buffer", default=32, type=int)
    p.add_argument("--emit-blocks", action="store_true")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("trace", help="per-step penalty audit for a token file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", default="auto", choices=["auto", "ints", "bytes"])
    p.add_argument("--vocab", default=256, type=int)
    p.add_argument("--window", default=512, type=int)
    p.add_argument("--buffer", default=32, type=int)
    p.add_argument("--alpha", default=0.15, type=float)
    p.add_argument("--limit", default=0, type=int,
                   help="trace only the last N steps (0 = all)")
    p.add_argument("--final-only", action="store_true",
                   help="only the full-context step")
    p.add_argument("--emit-vector", action="store_true",
                   help="include the full penalty vector (json output)")
    p.add_argument("--top", default=5, type=int)
    p.add_argument("--output", default="text", choices=["text", "json"])
    p.set_defaults(func=_cmd_trace)

    return parser


def _emit(text: str, out_path):
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def dispatch(argv) -> int:
    parser = build_parser()
    argv = _apply_config_file(parser, list(argv))
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"lzpenalty: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
