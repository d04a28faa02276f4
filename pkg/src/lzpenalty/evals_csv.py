"""Fixed-schema CSV serialization for sweep and bench results."""

SWEEP_HEADER = "penalty,strength,temperature,seed_count,repetition_rate,mean_xent_bits,distinct2"
BENCH_HEADER = "V,W,B,median_us,p99_us,overhead_pct"


def sweep_to_csv(rows) -> str:
    lines = [SWEEP_HEADER]
    for r in rows:
        lines.append(
            f"{r['penalty']},{r['strength']:g},{r['temperature']:g},"
            f"{r['seed_count']},{r['repetition_rate']:.6f},"
            f"{r['mean_xent_bits']:.6f},{r['distinct2']:.6f}"
        )
    return "\n".join(lines) + "\n"


def bench_to_csv(rows) -> str:
    lines = [BENCH_HEADER]
    for r in rows:
        lines.append(
            f"{r['V']},{r['W']},{r['B']},"
            f"{r['median_us']:.3f},{r['p99_us']:.3f},{r['overhead_pct']:.3f}"
        )
    return "\n".join(lines) + "\n"
